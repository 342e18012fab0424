#include "symm/solvers.hpp"

#include "symm/errors.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

namespace symm {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using QR = Eigen::ColPivHouseholderQR<MatrixXcd>;

double condition_from_qr(const QR& qr) {
    const auto diag = qr.matrixR().diagonal();
    if (diag.size() == 0) {
        return 1.0;
    }
    const double largest = std::abs(diag(0));
    const double smallest = std::abs(diag(diag.size() - 1));
    if (!(smallest > 0.0)) {
        return std::numeric_limits<double>::infinity();
    }
    return std::max(1.0, largest / smallest);
}

void require_regular(const QR& qr, MethodKind method, int n, double& condition) {
    condition = condition_from_qr(qr);
    if (!(condition <= kSingularConditionCutoff)) {
        throw SingularSystemError(std::string(to_string(method)) + " system of degree " + std::to_string(n) +
                                      " is numerically singular (condition estimate " +
                                      std::to_string(condition) + ")",
                                  condition);
    }
}

void check_degree(const OperatorAssembly& assembly, const FourierVector& b, int n, int limit,
                  std::string_view what) {
    if (n < 0) {
        throw DomainError(std::string(what) + ": degree n must be >= 0");
    }
    if (n > limit) {
        throw TruncationError(std::string(what) + ": degree n = " + std::to_string(n) + " exceeds limit " +
                              std::to_string(limit) + " for ambient order M = " +
                              std::to_string(assembly.M()));
    }
    if (b.max_index() > assembly.M()) {
        throw TruncationError(std::string(what) + ": right-hand side order " + std::to_string(b.max_index()) +
                              " exceeds ambient order M = " + std::to_string(assembly.M()));
    }
}

// Window |k| <= n of a degree-M coefficient vector.
VectorXcd window(const VectorXcd& v, int M, int n) {
    return v.segment(M - n, 2 * n + 1);
}

}  // namespace

std::string_view to_string(MethodKind method) noexcept {
    switch (method) {
        case MethodKind::LS: return "LS";
        case MethodKind::DLS: return "DLS";
        case MethodKind::BG: return "BG";
    }
    return "?";
}

MethodKind parse_method(std::string_view text) {
    std::string upper(text);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (upper == "LS") return MethodKind::LS;
    if (upper == "DLS") return MethodKind::DLS;
    if (upper == "BG") return MethodKind::BG;
    throw DomainError("unknown method '" + std::string(text) + "' (expected LS, DLS or BG)");
}

SolveReport solve_bg(const OperatorAssembly& assembly, const FourierVector& b, int n) {
    check_degree(assembly, b, n, assembly.M(), "solve_bg");
    const int M = assembly.M();
    const VectorXcd rhs = b.resized(M).to_eigen();

    const QR qr(assembly.galerkin_block(n));
    double condition = 1.0;
    require_regular(qr, MethodKind::BG, n, condition);
    const VectorXcd x = qr.solve(window(rhs, M, n));

    const double residual = (assembly.trial_columns(n) * x - rhs).norm();
    return {FourierVector::from_eigen(x), MethodKind::BG, n, residual, condition};
}

SolveReport solve_ls(const OperatorAssembly& assembly, const FourierVector& b, int n) {
    check_degree(assembly, b, n, assembly.M() / 4, "solve_ls");
    const VectorXcd rhs = b.resized(assembly.M()).to_eigen();
    const MatrixXcd images = assembly.trial_columns(n);

    const QR qr(images);
    double condition = 1.0;
    require_regular(qr, MethodKind::LS, n, condition);
    const VectorXcd x = qr.solve(rhs);

    const double residual = (images * x - rhs).norm();
    return {FourierVector::from_eigen(x), MethodKind::LS, n, residual, condition};
}

SolveReport solve_dls(const OperatorAssembly& assembly, const FourierVector& b, int n) {
    check_degree(assembly, b, n, assembly.M() / 4, "solve_dls");
    const int M = assembly.M();
    const VectorXcd rhs = b.resized(M).to_eigen();

    // K* restricted to Y_n: the conjugate transpose of the rows |j| <= n.
    const MatrixXcd adjoint_images = assembly.matrix().middleRows(M - n, 2 * n + 1).adjoint();
    const QR qr(adjoint_images);
    double condition = 1.0;
    require_regular(qr, MethodKind::DLS, n, condition);

    // adjoint_images = Q R P^T, so the Gram system (R P^T)^H (R P^T) u = b_n and
    // the solution K* u = Q R P^T u = Q R^{-H} P^T b_n.
    const int dim = 2 * n + 1;
    const VectorXcd permuted = qr.colsPermutation().transpose() * window(rhs, M, n);
    const VectorXcd y = qr.matrixR()
                            .topLeftCorner(dim, dim)
                            .triangularView<Eigen::Upper>()
                            .adjoint()
                            .solve(permuted);
    VectorXcd padded = VectorXcd::Zero(2 * M + 1);
    padded.head(dim) = y;
    const VectorXcd x = qr.householderQ() * padded;

    const double residual = (assembly.matrix() * x - rhs).norm();
    return {FourierVector::from_eigen(x), MethodKind::DLS, n, residual, condition};
}

SolveReport solve(MethodKind method, const OperatorAssembly& assembly, const FourierVector& b, int n) {
    switch (method) {
        case MethodKind::LS: return solve_ls(assembly, b, n);
        case MethodKind::DLS: return solve_dls(assembly, b, n);
        case MethodKind::BG: return solve_bg(assembly, b, n);
    }
    throw DomainError("unknown method");
}

double stability_sigma(const OperatorAssembly& assembly, int n) {
    if (n < 0 || n > assembly.M() / 4) {
        throw TruncationError("stability_sigma: degree n = " + std::to_string(n) +
                              " must lie in 0..M/4");
    }
    const Eigen::BDCSVD<MatrixXcd> svd(assembly.trial_columns(n));
    const auto& sv = svd.singularValues();
    const double smallest = sv(sv.size() - 1);
    return smallest > 0.0 ? 1.0 / smallest : std::numeric_limits<double>::infinity();
}

}  // namespace symm
