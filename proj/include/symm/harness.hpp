#pragma once

#include "symm/curve.hpp"
#include "symm/fourier.hpp"
#include "symm/operator.hpp"
#include "symm/solvers.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace symm {

/// Right-hand side b = K x for the manufactured solution x_k = 1/(1+k^2), |k| <= degree.
struct SmoothManufactured {
    int degree;
};

/// b(t) = 1 + sum_{0<|k|<=M} |k|^{-(1/2+alpha)} e^{ikt}, 0 < alpha < 1/2.
/// In L^2 but not in H^1 as M -> infinity.
struct PowerTail {
    double alpha;
};

struct CustomCoeffs {
    FourierVector coeffs;
};

struct RhsSpec {
    std::variant<SmoothManufactured, PowerTail, CustomCoeffs> kind;
    /// Truncation order of the synthetic series.
    int M;
};

enum class ValueKind { ErrorH0, ErrorHneg1, ErrorHneghalf, SolutionNormH0 };

std::string_view to_string(ValueKind kind) noexcept;

struct ExperimentRecord {
    MethodKind method;
    int n;
    double delta;
    double value;
    ValueKind value_kind;
    std::uint64_t seed;
};

/// A sweep cell whose solve failed; recorded instead of aborting the sweep.
struct SweepFailure {
    MethodKind method;
    int n;
    double delta;
    std::uint64_t seed;
    std::string message;
};

struct StudyResult {
    std::vector<ExperimentRecord> records;
    std::vector<SweepFailure> failures;
    int M = 0;
    int m = 0;
    double max_tail_fraction = 0.0;
};

FourierVector manufactured_solution(int degree);
/// x_k = (1+k^2)^{-exponent} for |k| <= M.
FourierVector sobolev_decay_solution(double exponent, int M);

/// PowerTail and CustomCoeffs; SmoothManufactured needs an assembly and throws DomainError here.
FourierVector make_rhs(const RhsSpec& spec);
FourierVector make_rhs(const RhsSpec& spec, const OperatorAssembly& assembly);

/// b + e with e real-valued, pseudo-random, and ||e||_{H^0} = delta exactly. Deterministic in seed.
FourierVector add_noise(const FourierVector& b, double delta, std::uint64_t seed);

struct FixedN {
    std::vector<int> n_list;
};
/// n = round(delta^{-1/(r+1)}) for a solution declared to lie in H^r, r <= 2.
struct OptimalFromDelta {
    double r;
};
using NRule = std::variant<FixedN, OptimalFromDelta>;

/// Degrees the rule selects, in sweep order (one per delta for OptimalFromDelta).
std::vector<int> degrees_for(const NRule& rule, const std::vector<double>& deltas);

/// Noisy-data error sweep against a known solution.
///
/// Every (delta, seed, n) cell solves K x = b^delta with b = K(exact) and
/// records the H^0 error. DLS also records the H^-1 error and BG the
/// H^-1/2 error. Solver failures land in StudyResult::failures.
StudyResult run_convergence(const OperatorAssembly& assembly, MethodKind method,
                            const FourierVector& exact_solution, const std::vector<double>& deltas,
                            const NRule& n_rule, const std::vector<std::uint64_t>& seeds = {0});

/// Same, assembling the operator at M = default_ambient_order(max n).
StudyResult run_convergence(const BoundaryCurve& curve, MethodKind method,
                            const FourierVector& exact_solution, const std::vector<double>& deltas,
                            const NRule& n_rule, const std::vector<std::uint64_t>& seeds = {0});

/// ||Psi_n||_{H^0} for the PowerTail(alpha) right-hand side truncated at 4 max(n).
/// Requires 4 max(n) <= M.
StudyResult run_divergence(const OperatorAssembly& assembly, MethodKind method, double alpha,
                           const std::vector<int>& n_list);
StudyResult run_divergence(const BoundaryCurve& curve, MethodKind method, double alpha,
                           const std::vector<int>& n_list);

enum class XAxis { N, Delta };

struct RateFit {
    double slope;
    double r_squared;
};

/// Least-squares line through (log x, log value) over records with positive x and value.
RateFit fit_rate(const std::vector<ExperimentRecord>& records, XAxis x_axis);

/// Mean value over seeds per (method, n, delta, value_kind); seed of the result is 0.
std::vector<ExperimentRecord> average_over_seeds(const std::vector<ExperimentRecord>& records);

std::vector<ExperimentRecord> filter_kind(const std::vector<ExperimentRecord>& records, ValueKind kind);

/// Distances ||x - P_n x|| and ||x - Q_n x|| where Q_n projects onto the
/// degree-M images K(X_n).
struct CompletenessResidual {
    double trial;
    double test;
};

CompletenessResidual completeness_residuals(const OperatorAssembly& assembly, const FourierVector& x, int n);

}  // namespace symm
