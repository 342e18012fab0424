#pragma once

#include "symm/curve.hpp"
#include "symm/fourier.hpp"

#include <Eigen/Dense>

namespace symm {

/// Fraction of a column's H^0 mass beyond |j| > M/2 that triggers the truncation warning.
inline constexpr double kTailWarningFraction = 1e-8;

/// Exact action of the singular part K0: e^{ikt} -> e^{ikt}/|k|, 1 -> 1.
FourierVector k0_apply(const FourierVector& v);

/// Eigenvalue of K0 on e^{ikt}.
inline double k0_eigenvalue(int k) {
    return k == 0 ? 1.0 : 1.0 / std::abs(static_cast<double>(k));
}

/// Galerkin coefficients of the smooth part C = K - K0.
struct SmoothPart {
    int M = 0;
    int m = 0;
    /// (2M+1) x (2M+1); entry (j+M, k+M) is the e^{ijt} coefficient of C e^{iks}.
    Eigen::MatrixXcd matrix;
    /// max over columns of (C-mass in |j| > M/2) / (H^0 mass of the full K column).
    double max_tail_fraction = 0.0;

    bool truncation_warning() const noexcept { return max_tail_fraction >= kTailWarningFraction; }
    FourierVector column(int k) const;
};

/// Trapezoidal assembly of C on the m-point grid followed by a discrete
/// transform to order M. Requires m >= 2(2M+1).
SmoothPart assemble_smooth_part(const BoundaryCurve& curve, int M, int m);

/// Default ambient order max(4n, 64) for a solve of degree n.
int default_ambient_order(int n);
/// Default quadrature size 4(2M+1).
int default_quadrature_size(int M);

/// K = K0 + C in Fourier coordinates, truncated at order M.
///
/// Immutable after construction and safe to share between threads.
class OperatorAssembly {
public:
    OperatorAssembly(BoundaryCurve curve, SmoothPart smooth);

    const BoundaryCurve& curve() const noexcept { return curve_; }
    int M() const noexcept { return M_; }
    int m() const noexcept { return m_; }
    double max_tail_fraction() const noexcept { return max_tail_fraction_; }
    bool truncation_warning() const noexcept { return max_tail_fraction_ >= kTailWarningFraction; }

    /// Full induced matrix A_{jk} = <K e_k, e_j>, indices shifted by M.
    const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }

    /// Coefficients of K e^{ikt} up to order M.
    FourierVector column(int k) const;

    /// Columns |k| <= n of the induced matrix, all 2M+1 rows.
    Eigen::MatrixXcd trial_columns(int n) const;
    /// Square block |j|, |k| <= n (the Bubnov-Galerkin matrix).
    Eigen::MatrixXcd galerkin_block(int n) const;

private:
    BoundaryCurve curve_;
    int M_;
    int m_;
    double max_tail_fraction_;
    Eigen::MatrixXcd matrix_;
};

OperatorAssembly assemble_operator(const BoundaryCurve& curve, int M, int m);
/// Uses default_quadrature_size(M).
OperatorAssembly assemble_operator(const BoundaryCurve& curve, int M);

/// Q_M K v from the stored columns; throws TruncationError when v.max_index() > M.
FourierVector apply_K(const OperatorAssembly& assembly, const FourierVector& v);

}  // namespace symm
