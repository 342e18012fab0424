#pragma once

#include <Eigen/Core>

#include <cmath>
#include <numbers>

#include <variant>
#include <vector>

namespace symm {

using Point2 = Eigen::Vector2d;

/// Below this value of |2 sin((t-s)/2)| the kernel switches to its diagonal continuation.
inline constexpr double kDiagonalSwitchThreshold = 1e-6;

struct Disc {
    double radius;
};

struct Ellipse {
    double semi_axis_x;
    double semi_axis_y;
};

/// Real trigonometric table per coordinate: {c0, c1, s1, c2, s2, ...} meaning
/// c0 + sum_k (c_k cos ks + s_k sin ks).
struct TrigCurve {
    std::vector<double> a_coeffs;
    std::vector<double> b_coeffs;
};

/// Closed 2pi-periodic boundary parametrization gamma(s) = (a(s), b(s)).
///
/// All supported kinds are closed-form and C-infinity, so derivatives up to
/// order three are exact. Instances are immutable; construction rejects curves
/// whose speed vanishes on a 1024-point grid.
class BoundaryCurve {
public:
    using Kind = std::variant<Disc, Ellipse, TrigCurve>;

    static BoundaryCurve disc(double radius);
    static BoundaryCurve ellipse(double semi_axis_x, double semi_axis_y);
    static BoundaryCurve trig(std::vector<double> a_coeffs, std::vector<double> b_coeffs);

    const Kind& kind() const noexcept { return kind_; }
    static constexpr int derivative_order() noexcept { return 3; }

    /// gamma and its derivatives; `order` must be in 0..3.
    Point2 eval(double s, int order = 0) const;

private:
    explicit BoundaryCurve(Kind kind);

    Kind kind_;
};

Point2 eval_curve(const BoundaryCurve& curve, double s, int order);

struct RegularityReport {
    double min_speed;
    bool injectivity_scale_ok;
    Point2 suggested_center;
};

/// Samples |gamma'| and the distance to the centroid on a uniform grid.
/// injectivity_scale_ok is a sufficient check for the existence of a center
/// z0 with |x - z0| != 1 on the boundary; false is a warning, not an error.
RegularityReport check_regularity(const BoundaryCurve& curve, int grid_size);

/// Smooth remainder k(t,s) of the logarithmic kernel after removing the
/// rotation-invariant singular part:
///   k(t,s) = -(1/pi) ln(|gamma(t)-gamma(s)| / |2 sin((t-s)/2)|) - 1/(2pi).
double smooth_kernel(const BoundaryCurve& curve, double t, double s);

/// Closed-form limits of k and its first two t-derivatives as s -> t.
struct DiagonalLimits {
    double k_diag;
    double k_t_limit;
    double k_tt_limit;
};

DiagonalLimits smooth_kernel_diagonal_derivatives(const BoundaryCurve& curve, double t);

/// Central finite-difference approximations of the same three limits with
/// step h, built from off-diagonal kernel values only (h must stay well
/// above the diagonal switch threshold).
DiagonalLimits diagonal_finite_differences(const BoundaryCurve& curve, double t, double h);

namespace detail {

/// Off-diagonal kernel from the squared chord and 4 sin^2((t-s)/2).
inline double kernel_from_squares(double chord2, double sine2) noexcept {
    return -(std::log(chord2 / sine2) + 1.0) / (2.0 * std::numbers::pi);
}

}  // namespace detail

}  // namespace symm

