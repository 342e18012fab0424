#include "symm/cli.hpp"

#include "symm/errors.hpp"
#include "symm/io.hpp"
#include "symm/operator.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

namespace symm::cli {

namespace {

using nlohmann::json;

template <class T>
T field_as(const json& doc, const std::string& key) {
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("field '" + key + "' has the wrong type");
    }
}

template <class T>
std::optional<T> optional_field(const json& doc, const std::string& key) {
    if (!doc.contains(key) || doc.at(key).is_null()) {
        return std::nullopt;
    }
    return field_as<T>(doc, key);
}

RhsSpec parse_rhs(const json& j, int default_M) {
    if (!j.is_object() || !j.contains("kind")) {
        throw ConfigError("missing field 'rhs.kind'");
    }
    const auto kind = field_as<std::string>(j, "kind");
    const int M = j.contains("M") ? field_as<int>(j, "M") : default_M;
    if (M < 0 || M > default_M) {
        throw ConfigError("field 'rhs.M' must lie in 0..M (" + std::to_string(default_M) + ")");
    }
    if (kind == "power_tail") {
        const double alpha = j.contains("alpha") ? field_as<double>(j, "alpha")
                                                 : throw ConfigError("missing field 'rhs.alpha'");
        if (!(alpha > 0.0 && alpha < 0.5)) {
            throw ConfigError("field 'rhs.alpha' must lie in (0, 1/2)");
        }
        return {PowerTail{alpha}, M};
    }
    if (kind == "smooth_manufactured") {
        const int degree = j.contains("degree") ? field_as<int>(j, "degree")
                                                : throw ConfigError("missing field 'rhs.degree'");
        if (degree < 0 || degree > default_M) {
            throw ConfigError("field 'rhs.degree' must lie in 0..M");
        }
        return {SmoothManufactured{degree}, M};
    }
    if (kind == "custom") {
        if (!j.contains("coeffs")) {
            throw ConfigError("missing field 'rhs.coeffs'");
        }
        FourierVector coeffs = io::fourier_from_json(j.at("coeffs"), "rhs.coeffs");
        if (coeffs.max_index() > default_M) {
            throw ConfigError("field 'rhs.coeffs' exceeds the ambient order M");
        }
        return {CustomCoeffs{std::move(coeffs)}, M};
    }
    if (kind == "zero") {
        return {CustomCoeffs{FourierVector(0)}, M};
    }
    throw ConfigError("field 'rhs.kind' has unknown value '" + kind +
                      "' (expected power_tail, smooth_manufactured, custom or zero)");
}

FourierVector parse_solution(const json& j, int default_M) {
    if (!j.is_object() || !j.contains("kind")) {
        throw ConfigError("missing field 'solution.kind'");
    }
    const auto kind = field_as<std::string>(j, "kind");
    if (kind == "smooth_manufactured") {
        const int degree = field_as<int>(j, "degree");
        if (degree < 0 || degree > default_M) {
            throw ConfigError("field 'solution.degree' must lie in 0..M");
        }
        return manufactured_solution(degree);
    }
    if (kind == "sobolev_decay") {
        const int M = j.contains("M") ? field_as<int>(j, "M") : default_M;
        if (M < 0 || M > default_M) {
            throw ConfigError("field 'solution.M' must lie in 0..M");
        }
        return sobolev_decay_solution(field_as<double>(j, "exponent"), M);
    }
    if (kind == "custom") {
        FourierVector coeffs = io::fourier_from_json(j.at("coeffs"), "solution.coeffs");
        if (coeffs.max_index() > default_M) {
            throw ConfigError("field 'solution.coeffs' exceeds the ambient order M");
        }
        return coeffs;
    }
    throw ConfigError("field 'solution.kind' has unknown value '" + kind + "'");
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw ConfigError("cannot open output file '" + path + "'");
    }
    file << text;
    if (!file) {
        throw ConfigError("failed writing output file '" + path + "'");
    }
}

std::string summary_path(const std::string& csv_path) {
    std::filesystem::path p(csv_path);
    p.replace_extension(".summary.json");
    return p.string();
}

json fit_summary(const std::vector<ExperimentRecord>& records, XAxis axis) {
    try {
        const RateFit fit = fit_rate(records, axis);
        return {{"slope", fit.slope}, {"r_squared", fit.r_squared}, {"x_axis", axis == XAxis::N ? "n" : "delta"}};
    } catch (const InsufficientDataError& e) {
        return {{"slope", nullptr}, {"error", e.what()}, {"x_axis", axis == XAxis::N ? "n" : "delta"}};
    }
}

std::string format(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

}  // namespace

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) {
        throw ConfigError("configuration must be a JSON object");
    }
    if (!doc.contains("curve")) {
        throw ConfigError("missing field 'curve'");
    }
    RunConfig config{io::curve_from_json(doc.at("curve"), "curve")};

    if (doc.contains("method")) {
        try {
            config.method = parse_method(field_as<std::string>(doc, "method"));
        } catch (const DomainError& e) {
            throw ConfigError(std::string("field 'method': ") + e.what());
        }
    }
    if (doc.contains("study")) {
        const auto study = field_as<std::string>(doc, "study");
        if (study == "convergence") {
            config.study = StudyKind::Convergence;
        } else if (study == "divergence") {
            config.study = StudyKind::Divergence;
        } else {
            throw ConfigError("field 'study' has unknown value '" + study + "' (expected convergence or divergence)");
        }
    }

    config.n = optional_field<int>(doc, "n");
    if (auto list = optional_field<std::vector<int>>(doc, "n_list")) {
        config.n_list = std::move(*list);
    }
    if (auto d = optional_field<double>(doc, "delta")) {
        config.delta = *d;
    }
    if (auto list = optional_field<std::vector<double>>(doc, "delta_list")) {
        config.delta_list = std::move(*list);
    }
    config.r = optional_field<double>(doc, "r");
    if (auto seed = optional_field<std::uint64_t>(doc, "seed")) {
        config.seed = *seed;
    }
    if (auto seeds = optional_field<std::vector<std::uint64_t>>(doc, "seeds")) {
        config.seeds = std::move(*seeds);
    }
    if (auto output = optional_field<std::string>(doc, "output")) {
        config.output = std::move(*output);
    }
    if (auto t = optional_field<double>(doc, "t")) {
        config.t_list = {*t};
    }
    if (auto list = optional_field<std::vector<double>>(doc, "t_list")) {
        config.t_list = std::move(*list);
    }
    if (auto list = optional_field<std::vector<double>>(doc, "h_list")) {
        config.h_list = std::move(*list);
    }

    if (config.n && *config.n < 0) {
        throw ConfigError("field 'n' must be >= 0");
    }
    if (std::any_of(config.n_list.begin(), config.n_list.end(), [](int n) { return n < 0; })) {
        throw ConfigError("field 'n_list' entries must be >= 0");
    }
    if (!(config.delta >= 0.0) ||
        std::any_of(config.delta_list.begin(), config.delta_list.end(), [](double d) { return !(d >= 0.0); })) {
        throw ConfigError("field 'delta'/'delta_list' must be >= 0");
    }
    if (config.study && config.study == StudyKind::Divergence && config.n_list.empty()) {
        throw InsufficientDataError("field 'n_list': divergence study needs at least 3 degrees, got none");
    }
    if (config.r && !(*config.r > 0.0 && *config.r <= 2.0)) {
        throw ConfigError("field 'r' must lie in (0, 2]");
    }

    // Largest degree the run will solve for.
    int n_max = config.n.value_or(0);
    for (const int n : config.n_list) {
        n_max = std::max(n_max, n);
    }
    if (config.study == StudyKind::Convergence && config.r) {
        const auto deltas = config.delta_list.empty() ? std::vector<double>{config.delta} : config.delta_list;
        try {
            for (const int n : degrees_for(OptimalFromDelta{*config.r}, deltas)) {
                n_max = std::max(n_max, n);
            }
        } catch (const DomainError& e) {
            throw ConfigError(std::string("field 'delta_list': ") + e.what());
        }
    }

    if (doc.contains("M")) {
        config.M = field_as<int>(doc, "M");
        if (config.M < 0) {
            throw ConfigError("field 'M' must be >= 0");
        }
        if (n_max > config.M / 4) {
            throw ConfigError("field 'n': degree " + std::to_string(n_max) + " exceeds M/4 = " +
                              std::to_string(config.M / 4));
        }
    } else {
        config.M = default_ambient_order(n_max);
    }
    if (doc.contains("m")) {
        config.m = field_as<int>(doc, "m");
        if (config.m < 2 * (2 * config.M + 1)) {
            throw ConfigError("field 'm' = " + std::to_string(config.m) +
                              " violates the anti-aliasing rule m >= 2(2M+1) = " +
                              std::to_string(2 * (2 * config.M + 1)));
        }
    } else {
        config.m = default_quadrature_size(config.M);
    }

    if (doc.contains("rhs")) {
        config.rhs = parse_rhs(doc.at("rhs"), config.M);
    }
    if (doc.contains("solution")) {
        config.solution = parse_solution(doc.at("solution"), config.M);
    }
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    json doc;
    try {
        doc = json::parse(file);
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(doc);
}

int cmd_assemble(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const OperatorAssembly assembly = assemble_operator(config.curve, config.M, config.m);
    const std::string text = io::to_json(assembly).dump() + "\n";
    if (config.output.empty()) {
        out << text;
    } else {
        write_text(config.output, text);
    }
    std::ostream& diag = config.output.empty() ? err : out;
    diag << "tail energy: max fraction beyond |j| > M/2 = " << format("%.3e", assembly.max_tail_fraction())
         << (assembly.truncation_warning() ? " (WARNING: M too small for this curve)" : " (ok)") << '\n';
    return kSuccess;
}

int cmd_solve(const RunConfig& config, std::ostream& out) {
    if (!config.rhs) {
        throw ConfigError("missing field 'rhs'");
    }
    if (!config.n) {
        throw ConfigError("missing field 'n'");
    }
    const OperatorAssembly assembly = assemble_operator(config.curve, config.M, config.m);
    FourierVector b = make_rhs(*config.rhs, assembly);
    b = add_noise(b, config.delta, config.seed);
    const SolveReport report = solve(config.method, assembly, b, *config.n);
    const std::string text = io::to_json(report).dump() + "\n";
    if (config.output.empty()) {
        out << text;
    } else {
        write_text(config.output, text);
    }
    return kSuccess;
}

int cmd_study(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (!config.study) {
        throw ConfigError("missing field 'study'");
    }
    const OperatorAssembly assembly = assemble_operator(config.curve, config.M, config.m);
    StudyResult result;
    json summary;
    summary["method"] = std::string(to_string(config.method));
    summary["curve"] = io::to_json(config.curve);

    if (*config.study == StudyKind::Divergence) {
        if (!config.rhs || !std::holds_alternative<PowerTail>(config.rhs->kind)) {
            throw ConfigError("field 'rhs': divergence study needs kind 'power_tail'");
        }
        const double alpha = std::get<PowerTail>(config.rhs->kind).alpha;
        result = run_divergence(assembly, config.method, alpha, config.n_list);
        summary["study"] = "divergence";
        summary["alpha"] = alpha;
        summary["slopes"]["SolutionNormH0"] = fit_summary(result.records, XAxis::N);
    } else {
        FourierVector exact;
        if (config.solution) {
            exact = *config.solution;
        } else if (config.rhs && std::holds_alternative<SmoothManufactured>(config.rhs->kind)) {
            exact = manufactured_solution(std::get<SmoothManufactured>(config.rhs->kind).degree);
        } else {
            throw ConfigError("field 'solution': convergence study needs a known solution "
                              "(or rhs kind 'smooth_manufactured')");
        }
        const auto deltas = config.delta_list.empty() ? std::vector<double>{config.delta} : config.delta_list;
        NRule rule = FixedN{config.n_list.empty() ? std::vector<int>{config.n.value_or(0)} : config.n_list};
        if (config.r) {
            rule = OptimalFromDelta{*config.r};
        }
        const auto seeds = config.seeds.empty() ? std::vector<std::uint64_t>{config.seed} : config.seeds;
        result = run_convergence(assembly, config.method, exact, deltas, rule, seeds);
        summary["study"] = "convergence";
        const XAxis axis = config.r || deltas.size() > 1 ? XAxis::Delta : XAxis::N;
        const auto averaged = average_over_seeds(result.records);
        for (const ValueKind kind : {ValueKind::ErrorH0, ValueKind::ErrorHneg1, ValueKind::ErrorHneghalf}) {
            const auto subset = filter_kind(averaged, kind);
            if (!subset.empty()) {
                summary["slopes"][std::string(to_string(kind))] = fit_summary(subset, axis);
            }
        }
    }

    summary["M"] = result.M;
    summary["m"] = result.m;
    summary["max_tail_fraction"] = result.max_tail_fraction;
    summary["truncation_warning"] = assembly.truncation_warning();
    summary["failures"] = json::array();
    for (const auto& f : result.failures) {
        summary["failures"].push_back(
            {{"method", std::string(to_string(f.method))}, {"n", f.n}, {"delta", f.delta}, {"seed", f.seed},
             {"message", f.message}});
    }

    std::ostringstream csv;
    io::write_csv(csv, result.records);
    const std::string summary_text = summary.dump(2) + "\n";
    if (config.output.empty()) {
        out << csv.str();
        err << summary_text;
    } else {
        write_text(config.output, csv.str());
        write_text(summary_path(config.output), summary_text);
        out << summary_text;
    }
    return kSuccess;
}

int cmd_kernel_check(const RunConfig& config, std::ostream& out) {
    std::vector<double> ts = config.t_list;
    if (ts.empty()) {
        for (int i = 0; i < 16; ++i) {
            ts.push_back(2.0 * std::numbers::pi * (i + 0.5) / 16.0);
        }
    }
    const std::vector<double> hs = config.h_list.empty() ? std::vector<double>{1e-2, 1e-3, 1e-4} : config.h_list;

    std::ostringstream table;
    table << "t quantity closed_form";
    for (const double h : hs) {
        table << " diff(h=" << format("%.0e", h) << ")";
    }
    table << " observed_order\n";
    for (const double t : ts) {
        const DiagonalLimits exact = smooth_kernel_diagonal_derivatives(config.curve, t);
        std::vector<DiagonalLimits> approx;
        for (const double h : hs) {
            approx.push_back(diagonal_finite_differences(config.curve, t, h));
        }
        const auto row = [&](const char* name, double DiagonalLimits::*member) {
            table << format("%.6f", t) << ' ' << name << ' ' << format("%.15e", exact.*member);
            std::vector<double> diffs;
            for (const auto& a : approx) {
                diffs.push_back(std::abs(a.*member - exact.*member));
                table << ' ' << format("%.3e", diffs.back());
            }
            // Order from the last two steps; differences at rounding level carry no rate.
            if (hs.size() >= 2 && diffs[diffs.size() - 2] > 1e-13 && diffs.back() > 1e-13) {
                const double order = std::log(diffs[diffs.size() - 2] / diffs.back()) /
                                     std::log(hs[hs.size() - 2] / hs.back());
                table << ' ' << format("%.2f", order);
            } else {
                table << " -";
            }
            table << '\n';
        };
        row("k_diag", &DiagonalLimits::k_diag);
        row("k_t_limit", &DiagonalLimits::k_t_limit);
        row("k_tt_limit", &DiagonalLimits::k_tt_limit);
    }
    out << table.str();
    if (!config.output.empty()) {
        write_text(config.output, table.str());
    }
    return kSuccess;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Petrov-Galerkin solvers for Symm's integral equation", "symm-pg"};
    app.require_subcommand(1);
    std::string config_path;
    std::string output;
    bool verbose = false;

    const auto add = [&](const char* name, const char* description) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("config", config_path, "JSON configuration file")->required();
        sub->add_option("-o,--output", output, "output path (overrides config 'output')");
        sub->add_flag("-v,--verbose", verbose, "print diagnostics to stderr");
        return sub;
    };
    CLI::App* assemble = add("assemble", "assemble the operator and dump it as JSON");
    CLI::App* solve_cmd = add("solve", "solve once and write the SolveReport JSON");
    CLI::App* study = add("study", "run a convergence or divergence sweep (CSV + summary)");
    CLI::App* kernel = add("kernel-check", "compare diagonal kernel limits with finite differences");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return kConfigFailure;
    }

    try {
        RunConfig config = load_config(config_path);
        if (!output.empty()) {
            config.output = output;
        }
        if (verbose) {
            err << "M = " << config.M << ", m = " << config.m << ", method = " << to_string(config.method) << '\n';
        }
        if (assemble->parsed()) return cmd_assemble(config, out, err);
        if (solve_cmd->parsed()) return cmd_solve(config, out);
        if (study->parsed()) return cmd_study(config, out, err);
        if (kernel->parsed()) return cmd_kernel_check(config, out);
    } catch (const SingularSystemError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigFailure;
    } catch (const InsufficientDataError& e) {
        err << "insufficient data: " << e.what() << '\n';
        return kConfigFailure;
    } catch (const DomainError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigFailure;
    } catch (const AliasingError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigFailure;
    } catch (const TruncationError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigFailure;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    }
    return kConfigFailure;
}

}  // namespace symm::cli
