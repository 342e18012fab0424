#pragma once

#include "symm/fourier.hpp"
#include "symm/operator.hpp"

#include <string>
#include <string_view>

namespace symm {

/// The three projection settings: least squares, dual least squares, Bubnov-Galerkin.
enum class MethodKind { LS, DLS, BG };

std::string_view to_string(MethodKind method) noexcept;
/// Accepts "LS", "DLS", "BG" (case-insensitive); throws DomainError otherwise.
MethodKind parse_method(std::string_view text);

/// Condition estimates above this are reported as SingularSystemError.
inline constexpr double kSingularConditionCutoff = 1e14;

struct SolveReport {
    /// Degree n for BG and LS; degree M for DLS, whose trial space K*(Y_n) is not spanned by pure modes.
    FourierVector solution;
    MethodKind method;
    int n;
    /// ||K x_n - b||_{H^0} over the ambient window.
    double residual_norm;
    /// |r_00| / |r_last| of the rank-revealing QR factor of the system matrix.
    double condition_estimate;
};

/// Solves P_n K P_n x = P_n b for x in X_n = span{e^{ikt}, |k| <= n}. Requires n <= M.
SolveReport solve_bg(const OperatorAssembly& assembly, const FourierVector& b, int n);

/// Minimizes ||K x - b||_{H^0} over x in X_n using the stored degree-M images.
/// Requires n <= M/4.
SolveReport solve_ls(const OperatorAssembly& assembly, const FourierVector& b, int n);

/// Finds u in X_n with <K K* u, e_j> = <b, e_j> for |j| <= n and returns K* u.
/// Requires n <= M/4.
SolveReport solve_dls(const OperatorAssembly& assembly, const FourierVector& b, int n);

SolveReport solve(MethodKind method, const OperatorAssembly& assembly, const FourierVector& b, int n);

/// max{ ||z|| : z in X_n, ||K z|| = 1 }, the reciprocal of the smallest singular
/// value of the degree-M images of X_n. Requires n <= M/4.
double stability_sigma(const OperatorAssembly& assembly, int n);

}  // namespace symm
