// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include "symm/curve.hpp"
#include "symm/harness.hpp"
#include "symm/operator.hpp"
#include "symm/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace symm;

namespace {

const double kRefRadius = std::exp(-0.5);

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> body;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

double divergence_oracle(double alpha, int n) {
    double sum = 1.0;
    for (int k = 1; k <= n; ++k) sum += 2.0 * std::pow(static_cast<double>(k), 1.0 - 2.0 * alpha);
    return std::sqrt(sum);
}

std::vector<int> doublings(int lo, int hi) {
    std::vector<int> out;
    for (int n = lo; n <= hi; n *= 2) out.push_back(n);
    return out;
}

Outcome eigen_decomposition() {
    const auto a = assemble_operator(BoundaryCurve::disc(kRefRadius), 64, 520);
    const int n = 16;
    const Eigen::MatrixXcd g = a.galerkin_block(n);
    double dev = 0.0;
    for (int j = -n; j <= n; ++j) {
        for (int k = -n; k <= n; ++k) {
            const double expected = j == k ? k0_eigenvalue(k) : 0.0;
            dev = std::max(dev, std::abs(g(j + n, k + n) - expected));
        }
    }
    return {dev <= 1e-10, fmt("max |A - diag(1, 1/|k|)| = %.2e", dev)};
}

Outcome method_coincidence() {
    const auto a = assemble_operator(BoundaryCurve::disc(kRefRadius), 256);
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> normal;
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        FourierVector b(a.M());
        for (auto& c : b.coeffs()) c = {normal(rng), normal(rng)};
        for (int n : {4, 16, 64}) {
            const auto bg = solve_bg(a, b, n).solution.resized(a.M()).to_eigen();
            const auto ls = solve_ls(a, b, n).solution.resized(a.M()).to_eigen();
            const auto dls = solve_dls(a, b, n).solution.resized(a.M()).to_eigen();
            worst = std::max({worst, (bg - ls).cwiseAbs().maxCoeff(), (bg - dls).cwiseAbs().maxCoeff()});
        }
    }
    return {worst <= 1e-10, fmt("max coefficient disagreement %.2e over 20 rhs", worst)};
}

Outcome divergence_rate() {
    const std::vector<int> ns = doublings(8, 512);
    const auto a = assemble_operator(BoundaryCurve::disc(kRefRadius), 2048, 2 * (2 * 2048 + 1));
    bool pass = true;
    std::string detail;
    for (double alpha : {0.1, 0.25, 0.01}) {
        const auto result = run_divergence(a, MethodKind::BG, alpha, ns);
        if (!result.failures.empty() || result.records.size() != ns.size()) {
            return {false, "solver failure in divergence sweep"};
        }
        double rel = 0.0;
        for (const auto& rec : result.records) {
            const double oracle = divergence_oracle(alpha, rec.n);
            rel = std::max(rel, std::abs(rec.value - oracle) / oracle);
        }
        const double slope = fit_rate(result.records, XAxis::N).slope;
        const bool ok = alpha == 0.1 ? (slope >= 0.85 && slope <= 0.95 && rel <= 1e-10)
                                     : std::abs(slope - (1.0 - alpha)) <= 0.05;
        pass = pass && ok;
        detail += fmt("alpha=%.2f slope %.4f (oracle rel err %.1e); ", alpha, slope, rel);
    }
    // LS and DLS coincide with BG on the disc; spot-check one degree.
    const auto b = make_rhs(RhsSpec{PowerTail{0.1}, 4 * 256});
    for (auto method : {MethodKind::LS, MethodKind::DLS}) {
        const double norm = sobolev_norm(solve(method, a, b, 256).solution, SobolevIndex(0.0));
        const double oracle = divergence_oracle(0.1, 256);
        pass = pass && std::abs(norm - oracle) <= 1e-10 * oracle;
    }
    return {pass, detail + "LS/DLS match the oracle at n=256"};
}

Outcome noisy_convergence() {
    const std::vector<double> deltas = {1e-2, 1e-3, 1e-4, 1e-5};
    const std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
    const NRule rule = OptimalFromDelta{2.0};
    const auto degrees = degrees_for(rule, deltas);
    const int M = default_ambient_order(*std::max_element(degrees.begin(), degrees.end()));
    const auto a = assemble_operator(BoundaryCurve::disc(kRefRadius), M);
    const auto exact = sobolev_decay_solution(1.5, M);
    bool pass = true;
    std::string detail;
    for (auto method : {MethodKind::LS, MethodKind::DLS, MethodKind::BG}) {
        const auto result = run_convergence(a, method, exact, deltas, rule, seeds);
        if (!result.failures.empty()) return {false, "solver failure in convergence sweep"};
        const auto averaged = average_over_seeds(filter_kind(result.records, ValueKind::ErrorH0));
        const double slope = fit_rate(averaged, XAxis::Delta).slope;
        pass = pass && slope >= 0.56 && slope <= 0.76;
        detail += std::string(to_string(method)) + fmt(" slope %.4f; ", slope);
    }
    return {pass, detail + "target 2/3"};
}

Outcome stability_constant() {
    const auto disc = assemble_operator(BoundaryCurve::disc(kRefRadius), 256);
    const auto ellipse = assemble_operator(BoundaryCurve::ellipse(2.0, 1.0), 256);
    double disc_dev = 0.0;
    double lo = 1e300;
    double hi = 0.0;
    for (int n : doublings(4, 64)) {
        disc_dev = std::max(disc_dev, std::abs(stability_sigma(disc, n) - n));
        const double ratio = stability_sigma(ellipse, n) / n;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    return {disc_dev <= 1e-10 && hi / lo < 2.0,
            fmt("disc max |sigma_n - n| = %.2e; ellipse sigma_n/n in [%.6f, %.6f]", disc_dev, lo, hi)};
}

Outcome diagonal_limits() {
    const auto curve = BoundaryCurve::ellipse(2.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 16; ++i) {
        const double t = 2.0 * std::numbers::pi * (i + 0.5) / 16.0;
        const auto exact = smooth_kernel_diagonal_derivatives(curve, t);
        const auto fd = diagonal_finite_differences(curve, t, 1e-3);
        for (auto member : {&DiagonalLimits::k_diag, &DiagonalLimits::k_t_limit, &DiagonalLimits::k_tt_limit}) {
            const double scale = std::max(std::abs(exact.*member), 1e-12);
            // Exact zeros (k_t at symmetry points) are compared absolutely.
            const double err = std::abs(fd.*member - exact.*member) / (std::abs(exact.*member) > 1e-8 ? scale : 1.0);
            worst = std::max(worst, err);
        }
    }
    return {worst <= 1e-3, fmt("max relative deviation %.2e at h = 1e-3", worst)};
}

Outcome self_adjointness() {
    const auto curve = BoundaryCurve::ellipse(2.0, 1.0);
    const int M = 32;
    const int m = default_quadrature_size(M);
    const auto a = assemble_operator(curve, M, m);
    const auto b = assemble_operator(curve, M, 2 * m);
    const double herm = (a.matrix() - a.matrix().adjoint()).cwiseAbs().maxCoeff();
    const double quad = (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
    return {herm <= 1e-8 && quad <= 1e-10, fmt("max|A - A^H| = %.2e; m-doubling change %.2e", herm, quad)};
}

Outcome weak_convergence() {
    const int M = 1024;
    const double alpha = 0.25;
    const auto a = assemble_operator(BoundaryCurve::disc(kRefRadius), M);
    const auto b = make_rhs(RhsSpec{PowerTail{alpha}, M});
    FourierVector psi(M);
    psi[0] = 1.0;
    for (int k = 1; k <= M; ++k) psi[k] = psi[-k] = std::pow(static_cast<double>(k), 0.5 - alpha);
    std::vector<double> weak;
    std::vector<double> strong;
    for (int n : doublings(8, 256)) {
        const auto x = solve_dls(a, b, n).solution;
        weak.push_back(sobolev_norm(x - psi, SobolevIndex(-1.0)));
        strong.push_back(sobolev_norm(x, SobolevIndex(0.0)));
    }
    bool pass = true;
    for (std::size_t i = 1; i < weak.size(); ++i) {
        pass = pass && weak[i] <= 1.1 * weak[i - 1] && strong[i] > strong[i - 1];
    }
    return {pass, fmt("H^-1 error %.3e -> %.3e; H^0 norm %.2f -> ", weak.front(), weak.back(), strong.front()) +
                      fmt("%.2f", strong.back())};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "eigen-decomposition on the disc", 1.0, eigen_decomposition},
        {2, "LS/DLS/BG coincidence on the disc", 10.0, method_coincidence},
        {3, "divergence rate for rough data", 30.0, divergence_rate},
        {4, "noisy convergence rate", 60.0, noisy_convergence},
        {5, "stability constant", 30.0, stability_constant},
        {6, "diagonal kernel limits", 1.0, diagonal_limits},
        {7, "self-adjointness and quadrature stability", 10.0, self_adjointness},
        {8, "weak-norm convergence for rough data", 30.0, weak_convergence},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.body();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = seconds < c.budget_seconds;
        const bool pass = outcome.pass && in_time;
        failures += pass ? 0 : 1;
        std::printf("%s criterion %d (%s): %s [%.2f s of %.0f s]%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                    outcome.detail.c_str(), seconds, c.budget_seconds, in_time ? "" : " over time budget");
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
