#include "symm/harness.hpp"

#include "symm/errors.hpp"
#include "symm/parallel.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <tuple>

namespace symm {

namespace {

bool record_less(const ExperimentRecord& a, const ExperimentRecord& b) {
    return std::tuple(static_cast<int>(a.method), a.n, a.delta, a.seed, static_cast<int>(a.value_kind)) <
           std::tuple(static_cast<int>(b.method), b.n, b.delta, b.seed, static_cast<int>(b.value_kind));
}

int degree_limit(MethodKind method, int M) {
    return method == MethodKind::BG ? M : M / 4;
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) {
        throw DomainError("PowerTail alpha must lie in (0, 1/2), got " + std::to_string(alpha));
    }
}

}  // namespace

std::string_view to_string(ValueKind kind) noexcept {
    switch (kind) {
        case ValueKind::ErrorH0: return "ErrorH0";
        case ValueKind::ErrorHneg1: return "ErrorHneg1";
        case ValueKind::ErrorHneghalf: return "ErrorHneghalf";
        case ValueKind::SolutionNormH0: return "SolutionNormH0";
    }
    return "?";
}

FourierVector manufactured_solution(int degree) {
    if (degree < 0) {
        throw DomainError("manufactured solution degree must be >= 0");
    }
    FourierVector x(degree);
    for (int k = -degree; k <= degree; ++k) {
        x[k] = 1.0 / (1.0 + static_cast<double>(k) * k);
    }
    return x;
}

FourierVector sobolev_decay_solution(double exponent, int M) {
    FourierVector x(M);
    for (int k = -M; k <= M; ++k) {
        x[k] = std::pow(1.0 + static_cast<double>(k) * k, -exponent);
    }
    return x;
}

FourierVector make_rhs(const RhsSpec& spec) {
    if (spec.M < 0) {
        throw DomainError("rhs truncation M must be >= 0");
    }
    if (const auto* tail = std::get_if<PowerTail>(&spec.kind)) {
        check_alpha(tail->alpha);
        FourierVector b(spec.M);
        b[0] = 1.0;
        for (int k = 1; k <= spec.M; ++k) {
            const double c = std::pow(static_cast<double>(k), -(0.5 + tail->alpha));
            b[k] = c;
            b[-k] = c;
        }
        return b;
    }
    if (const auto* custom = std::get_if<CustomCoeffs>(&spec.kind)) {
        return custom->coeffs.resized(spec.M);
    }
    throw DomainError("SmoothManufactured right-hand sides need an operator assembly");
}

FourierVector make_rhs(const RhsSpec& spec, const OperatorAssembly& assembly) {
    if (const auto* smooth = std::get_if<SmoothManufactured>(&spec.kind)) {
        const FourierVector x = manufactured_solution(smooth->degree);
        return apply_K(assembly, x).resized(spec.M);
    }
    return make_rhs(spec);
}

FourierVector add_noise(const FourierVector& b, double delta, std::uint64_t seed) {
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
        throw DomainError("noise level delta must be finite and >= 0");
    }
    if (delta == 0.0) {
        return b;
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int M = b.max_index();
    FourierVector e(M);
    e[0] = normal(rng);
    for (int k = 1; k <= M; ++k) {
        const double re = normal(rng);
        const double im = normal(rng);
        e[k] = {re, im};
        e[-k] = {re, -im};
    }
    const double norm = sobolev_norm(e, SobolevIndex(0.0));
    e *= delta / norm;
    return b + e;
}

std::vector<int> degrees_for(const NRule& rule, const std::vector<double>& deltas) {
    if (const auto* fixed = std::get_if<FixedN>(&rule)) {
        return fixed->n_list;
    }
    const double r = std::get<OptimalFromDelta>(rule).r;
    if (!(r > 0.0 && r <= 2.0)) {
        throw DomainError("declared regularity r must lie in (0, 2]");
    }
    std::vector<int> out;
    out.reserve(deltas.size());
    for (const double delta : deltas) {
        if (!(delta > 0.0)) {
            throw DomainError("OptimalFromDelta needs delta > 0");
        }
        out.push_back(static_cast<int>(std::lround(std::pow(delta, -1.0 / (r + 1.0)))));
    }
    return out;
}

StudyResult run_convergence(const OperatorAssembly& assembly, MethodKind method,
                            const FourierVector& exact_solution, const std::vector<double>& deltas,
                            const NRule& n_rule, const std::vector<std::uint64_t>& seeds) {
    const int M = assembly.M();
    if (exact_solution.max_index() > M) {
        throw TruncationError("exact solution order exceeds the assembly order M");
    }
    const std::vector<int> degrees = degrees_for(n_rule, deltas);
    const bool optimal = std::holds_alternative<OptimalFromDelta>(n_rule);

    struct Cell {
        double delta;
        std::uint64_t seed;
        int n;
    };
    std::vector<Cell> cells;
    for (std::size_t d = 0; d < deltas.size(); ++d) {
        for (const auto seed : seeds) {
            if (optimal) {
                cells.push_back({deltas[d], seed, degrees[d]});
            } else {
                for (const int n : degrees) {
                    cells.push_back({deltas[d], seed, n});
                }
            }
        }
    }

    const FourierVector b = apply_K(assembly, exact_solution);
    const FourierVector exact = exact_solution.resized(M);
    std::vector<std::vector<ExperimentRecord>> cell_records(cells.size());
    std::vector<std::optional<SweepFailure>> cell_failures(cells.size());
    parallel_for(0, static_cast<int>(cells.size()), [&](int c) {
        const Cell& cell = cells[c];
        try {
            if (cell.n < 0 || cell.n > degree_limit(method, M)) {
                throw TruncationError("degree n = " + std::to_string(cell.n) +
                                      " outside the admissible range for M = " + std::to_string(M));
            }
            const FourierVector noisy = add_noise(b, cell.delta, cell.seed);
            const SolveReport report = solve(method, assembly, noisy, cell.n);
            const FourierVector error = report.solution.resized(M) - exact;
            auto& out = cell_records[c];
            out.push_back({method, cell.n, cell.delta, sobolev_norm(error, SobolevIndex(0.0)),
                           ValueKind::ErrorH0, cell.seed});
            if (method == MethodKind::DLS) {
                out.push_back({method, cell.n, cell.delta, sobolev_norm(error, SobolevIndex(-1.0)),
                               ValueKind::ErrorHneg1, cell.seed});
            }
            if (method == MethodKind::BG) {
                out.push_back({method, cell.n, cell.delta, sobolev_norm(error, SobolevIndex(-0.5)),
                               ValueKind::ErrorHneghalf, cell.seed});
            }
        } catch (const Error& e) {
            cell_failures[c] = SweepFailure{method, cell.n, cell.delta, cell.seed, e.what()};
        }
    });

    StudyResult result;
    result.M = M;
    result.m = assembly.m();
    result.max_tail_fraction = assembly.max_tail_fraction();
    for (std::size_t c = 0; c < cells.size(); ++c) {
        result.records.insert(result.records.end(), cell_records[c].begin(), cell_records[c].end());
        if (cell_failures[c]) {
            result.failures.push_back(*cell_failures[c]);
        }
    }
    std::stable_sort(result.records.begin(), result.records.end(), record_less);
    return result;
}

StudyResult run_convergence(const BoundaryCurve& curve, MethodKind method,
                            const FourierVector& exact_solution, const std::vector<double>& deltas,
                            const NRule& n_rule, const std::vector<std::uint64_t>& seeds) {
    const std::vector<int> degrees = degrees_for(n_rule, deltas);
    const int n_max = degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end());
    const int M = std::max(default_ambient_order(n_max), exact_solution.max_index());
    const OperatorAssembly assembly = assemble_operator(curve, M);
    return run_convergence(assembly, method, exact_solution, deltas, n_rule, seeds);
}

StudyResult run_divergence(const OperatorAssembly& assembly, MethodKind method, double alpha,
                           const std::vector<int>& n_list) {
    check_alpha(alpha);
    if (n_list.empty()) {
        throw InsufficientDataError("divergence study needs a non-empty n_list");
    }
    const int n_max = *std::max_element(n_list.begin(), n_list.end());
    if (*std::min_element(n_list.begin(), n_list.end()) < 0) {
        throw DomainError("degrees in n_list must be >= 0");
    }
    if (4 * n_max > assembly.M()) {
        throw TruncationError("divergence study needs 4 max(n) = " + std::to_string(4 * n_max) +
                              " <= M = " + std::to_string(assembly.M()));
    }
    const FourierVector b = make_rhs(RhsSpec{PowerTail{alpha}, 4 * n_max});

    std::vector<std::optional<ExperimentRecord>> cell_records(n_list.size());
    std::vector<std::optional<SweepFailure>> cell_failures(n_list.size());
    parallel_for(0, static_cast<int>(n_list.size()), [&](int c) {
        const int n = n_list[c];
        try {
            const SolveReport report = solve(method, assembly, b, n);
            cell_records[c] = ExperimentRecord{method, n, 0.0, sobolev_norm(report.solution, SobolevIndex(0.0)),
                                               ValueKind::SolutionNormH0, 0};
        } catch (const Error& e) {
            cell_failures[c] = SweepFailure{method, n, 0.0, 0, e.what()};
        }
    });

    StudyResult result;
    result.M = assembly.M();
    result.m = assembly.m();
    result.max_tail_fraction = assembly.max_tail_fraction();
    for (std::size_t c = 0; c < n_list.size(); ++c) {
        if (cell_records[c]) {
            result.records.push_back(*cell_records[c]);
        }
        if (cell_failures[c]) {
            result.failures.push_back(*cell_failures[c]);
        }
    }
    std::stable_sort(result.records.begin(), result.records.end(), record_less);
    return result;
}

StudyResult run_divergence(const BoundaryCurve& curve, MethodKind method, double alpha,
                           const std::vector<int>& n_list) {
    check_alpha(alpha);
    if (n_list.empty()) {
        throw InsufficientDataError("divergence study needs a non-empty n_list");
    }
    const int n_max = *std::max_element(n_list.begin(), n_list.end());
    const OperatorAssembly assembly = assemble_operator(curve, default_ambient_order(n_max));
    return run_divergence(assembly, method, alpha, n_list);
}

RateFit fit_rate(const std::vector<ExperimentRecord>& records, XAxis x_axis) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& rec : records) {
        const double x = x_axis == XAxis::N ? static_cast<double>(rec.n) : rec.delta;
        if (x > 0.0 && rec.value > 0.0 && std::isfinite(x) && std::isfinite(rec.value)) {
            xs.push_back(std::log(x));
            ys.push_back(std::log(rec.value));
        }
    }
    if (xs.size() < 3) {
        throw InsufficientDataError("rate fit needs at least 3 records with positive x and value, got " +
                                    std::to_string(xs.size()));
    }
    const double count = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= count;
    my /= count;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (!(sxx > 0.0)) {
        throw InsufficientDataError("rate fit needs at least two distinct x values");
    }
    const double slope = sxy / sxx;
    const double r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return {slope, r_squared};
}

std::vector<ExperimentRecord> average_over_seeds(const std::vector<ExperimentRecord>& records) {
    using Key = std::tuple<int, int, double, int>;
    std::map<Key, std::pair<double, int>> sums;
    for (const auto& rec : records) {
        auto& [sum, count] =
            sums[Key{static_cast<int>(rec.method), rec.n, rec.delta, static_cast<int>(rec.value_kind)}];
        sum += rec.value;
        ++count;
    }
    std::vector<ExperimentRecord> out;
    out.reserve(sums.size());
    for (const auto& [key, acc] : sums) {
        const auto& [method, n, delta, kind] = key;
        out.push_back({static_cast<MethodKind>(method), n, delta, acc.first / acc.second,
                       static_cast<ValueKind>(kind), 0});
    }
    std::stable_sort(out.begin(), out.end(), record_less);
    return out;
}

std::vector<ExperimentRecord> filter_kind(const std::vector<ExperimentRecord>& records, ValueKind kind) {
    std::vector<ExperimentRecord> out;
    std::copy_if(records.begin(), records.end(), std::back_inserter(out),
                 [kind](const ExperimentRecord& r) { return r.value_kind == kind; });
    return out;
}

CompletenessResidual completeness_residuals(const OperatorAssembly& assembly, const FourierVector& x, int n) {
    const int M = assembly.M();
    if (x.max_index() > M) {
        throw TruncationError("completeness check: vector order exceeds M");
    }
    const FourierVector padded = x.resized(M);
    const double trial = sobolev_norm(padded - project(padded, n), SobolevIndex(0.0));

    const Eigen::VectorXcd v = padded.to_eigen();
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(assembly.trial_columns(n));
    const int dim = 2 * n + 1;
    // Q^H v, keep the range components, map back.
    Eigen::VectorXcd coords = qr.householderQ().adjoint() * v;
    coords.tail(coords.size() - dim).setZero();
    const Eigen::VectorXcd projected = qr.householderQ() * coords;
    return {trial, (v - projected).norm()};
}

}  // namespace symm
