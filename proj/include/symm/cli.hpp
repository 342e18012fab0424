#pragma once

#include "symm/curve.hpp"
#include "symm/fourier.hpp"
#include "symm/harness.hpp"
#include "symm/solvers.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace symm::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int { kSuccess = 0, kConfigFailure = 1, kNumericalFailure = 2 };

enum class StudyKind { Convergence, Divergence };

/// Parsed experiment configuration; numeric defaults are resolved at parse time.
struct RunConfig {
    BoundaryCurve curve;
    MethodKind method = MethodKind::BG;
    int M = 64;
    int m = 4 * 129;
    std::optional<int> n;
    std::vector<int> n_list;
    double delta = 0.0;
    std::vector<double> delta_list;
    std::optional<RhsSpec> rhs;
    /// Known solution for convergence studies.
    std::optional<FourierVector> solution;
    /// Declared regularity; selects n = round(delta^{-1/(r+1)}).
    std::optional<double> r;
    std::optional<StudyKind> study;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> seeds;
    std::string output;
    std::vector<double> t_list;
    std::vector<double> h_list;
};

/// Validates a configuration document. Throws ConfigError (or
/// InsufficientDataError for empty sweeps) naming the offending field.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

int cmd_assemble(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_solve(const RunConfig& config, std::ostream& out);
int cmd_study(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_kernel_check(const RunConfig& config, std::ostream& out);

/// Entry point: `symm-pg <assemble|solve|study|kernel-check> CONFIG [-o PATH] [-v]`.
/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symm::cli
