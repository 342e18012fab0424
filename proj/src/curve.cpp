#include "symm/curve.hpp"

#include "symm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace symm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinSpeed = 1e-12;

// d^order/ds^order of cos(k s) and sin(k s).
double cos_derivative(int k, double s, int order) {
    const double kk = std::pow(static_cast<double>(k), order);
    switch (order) {
        case 0: return std::cos(k * s);
        case 1: return -kk * std::sin(k * s);
        case 2: return -kk * std::cos(k * s);
        default: return kk * std::sin(k * s);
    }
}

double sin_derivative(int k, double s, int order) {
    const double kk = std::pow(static_cast<double>(k), order);
    switch (order) {
        case 0: return std::sin(k * s);
        case 1: return kk * std::cos(k * s);
        case 2: return -kk * std::sin(k * s);
        default: return -kk * std::cos(k * s);
    }
}

double eval_trig_series(const std::vector<double>& c, double s, int order) {
    double value = (order == 0 && !c.empty()) ? c[0] : 0.0;
    for (std::size_t idx = 1; idx < c.size(); ++idx) {
        const int k = static_cast<int>((idx + 1) / 2);
        value += (idx % 2 == 1) ? c[idx] * cos_derivative(k, s, order)
                                : c[idx] * sin_derivative(k, s, order);
    }
    return value;
}

struct Evaluator {
    double s;
    int order;

    Point2 operator()(const Disc& d) const {
        return d.radius * Point2(cos_derivative(1, s, order), sin_derivative(1, s, order));
    }
    Point2 operator()(const Ellipse& e) const {
        return Point2(e.semi_axis_x * cos_derivative(1, s, order),
                      e.semi_axis_y * sin_derivative(1, s, order));
    }
    Point2 operator()(const TrigCurve& c) const {
        return Point2(eval_trig_series(c.a_coeffs, s, order),
                      eval_trig_series(c.b_coeffs, s, order));
    }
};

double min_speed_on_grid(const BoundaryCurve& curve, int grid_size) {
    double min_speed = std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid_size; ++j) {
        const double s = 2.0 * kPi * j / grid_size;
        min_speed = std::min(min_speed, curve.eval(s, 1).norm());
    }
    return min_speed;
}

// Signed parameter difference s - t reduced to [-pi, pi].
double wrapped_difference(double t, double s) {
    return std::remainder(s - t, 2.0 * kPi);
}

}  // namespace

BoundaryCurve::BoundaryCurve(Kind kind) : kind_(std::move(kind)) {
    const double speed = min_speed_on_grid(*this, 1024);
    if (!(speed > kMinSpeed)) {
        throw InvalidCurveError("curve speed |gamma'(s)| vanishes on the sampling grid (min " +
                                std::to_string(speed) + ")");
    }
}

BoundaryCurve BoundaryCurve::disc(double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw DomainError("disc radius must be positive and finite");
    }
    return BoundaryCurve(Disc{radius});
}

BoundaryCurve BoundaryCurve::ellipse(double semi_axis_x, double semi_axis_y) {
    if (!(semi_axis_x > 0.0) || !(semi_axis_y > 0.0) || !std::isfinite(semi_axis_x) ||
        !std::isfinite(semi_axis_y)) {
        throw DomainError("ellipse semi-axes must be positive and finite");
    }
    return BoundaryCurve(Ellipse{semi_axis_x, semi_axis_y});
}

BoundaryCurve BoundaryCurve::trig(std::vector<double> a_coeffs, std::vector<double> b_coeffs) {
    const auto finite = [](const std::vector<double>& c) {
        return std::all_of(c.begin(), c.end(), [](double v) { return std::isfinite(v); });
    };
    if (!finite(a_coeffs) || !finite(b_coeffs)) {
        throw DomainError("trigonometric curve coefficients must be finite");
    }
    return BoundaryCurve(TrigCurve{std::move(a_coeffs), std::move(b_coeffs)});
}

Point2 BoundaryCurve::eval(double s, int order) const {
    if (order < 0 || order > 3) {
        throw DomainError("curve derivative order must be in 0..3, got " + std::to_string(order));
    }
    return std::visit(Evaluator{s, order}, kind_);
}

Point2 eval_curve(const BoundaryCurve& curve, double s, int order) {
    return curve.eval(s, order);
}

RegularityReport check_regularity(const BoundaryCurve& curve, int grid_size) {
    if (grid_size < 64) {
        throw DomainError("regularity check needs grid_size >= 64");
    }
    std::vector<Point2> points(grid_size);
    Point2 centroid = Point2::Zero();
    double min_speed = std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid_size; ++j) {
        const double s = 2.0 * kPi * j / grid_size;
        points[j] = curve.eval(s, 0);
        centroid += points[j];
        min_speed = std::min(min_speed, curve.eval(s, 1).norm());
    }
    centroid /= grid_size;
    if (!(min_speed > kMinSpeed)) {
        throw InvalidCurveError("curve speed falls below 1e-12 on the regularity grid");
    }

    double min_dist = std::numeric_limits<double>::infinity();
    double max_dist = 0.0;
    for (const auto& p : points) {
        const double d = (p - centroid).norm();
        min_dist = std::min(min_dist, d);
        max_dist = std::max(max_dist, d);
    }
    const bool ok = max_dist < 1.0 || min_dist > 1.0;
    return {min_speed, ok, centroid};
}

DiagonalLimits smooth_kernel_diagonal_derivatives(const BoundaryCurve& curve, double t) {
    const Point2 d1 = curve.eval(t, 1);
    const Point2 d2 = curve.eval(t, 2);
    const Point2 d3 = curve.eval(t, 3);
    const double speed2 = d1.squaredNorm();
    const double d1d2 = d1.dot(d2);

    DiagonalLimits out{};
    out.k_diag = -(0.5 * std::log(speed2) + 0.5) / kPi;
    out.k_t_limit = -d1d2 / (2.0 * kPi * speed2);
    // The (gamma'.gamma'')^2 term enters with -1/2; see the expansion of
    // d^2/dt^2 ln(|gamma(t)-gamma(s)| / 2 sin((s-t)/2)).
    const double bracket = speed2 * speed2 / 12.0 +
                           speed2 * (d3.dot(d1) / 3.0 + d2.squaredNorm() / 4.0) -
                           0.5 * d1d2 * d1d2;
    out.k_tt_limit = -bracket / (kPi * speed2 * speed2);
    return out;
}

DiagonalLimits diagonal_finite_differences(const BoundaryCurve& curve, double t, double h) {
    if (!(h > 10.0 * kDiagonalSwitchThreshold)) {
        throw DomainError("finite-difference step must exceed the diagonal switch threshold");
    }
    const double forward = smooth_kernel(curve, t, t + h);
    const double backward = smooth_kernel(curve, t, t - h);
    const double mean = 0.5 * (forward + backward);
    DiagonalLimits out{};
    out.k_diag = mean;
    out.k_t_limit = (smooth_kernel(curve, t + h, t) - smooth_kernel(curve, t - h, t)) / (2.0 * h);
    // Second difference across the diagonal in s; by symmetry of k it equals
    // the second t-derivative. The centre value is the continuous extension k(t,t).
    out.k_tt_limit = (forward - 2.0 * smooth_kernel(curve, t, t) + backward) / (h * h);
    return out;
}

double smooth_kernel(const BoundaryCurve& curve, double t, double s) {
    const double h = wrapped_difference(t, s);
    const double two_sin = 2.0 * std::sin(0.5 * h);
    if (std::abs(two_sin) > kDiagonalSwitchThreshold) {
        const double chord2 = (curve.eval(t, 0) - curve.eval(s, 0)).squaredNorm();
        return detail::kernel_from_squares(chord2, two_sin * two_sin);
    }
    // k(t, t+h) = k(t,t) + h * d/ds k(t,s)|_{s=t} + O(h^2); the s-derivative
    // limit equals the t-derivative limit by symmetry.
    const Point2 d1 = curve.eval(t, 1);
    const Point2 d2 = curve.eval(t, 2);
    const double speed2 = d1.squaredNorm();
    const double k_diag = -(0.5 * std::log(speed2) + 0.5) / kPi;
    const double slope = -d1.dot(d2) / (2.0 * kPi * speed2);
    return k_diag + slope * h;
}

}  // namespace symm
