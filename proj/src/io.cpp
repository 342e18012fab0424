#include "symm/io.hpp"

#include "symm/errors.hpp"

#include <cstdio>
#include <ostream>

namespace symm::io {

namespace {

template <class T>
T required(const json& j, const std::string& key, const std::string& field) {
    if (!j.is_object() || !j.contains(key)) {
        throw ConfigError("missing field '" + field + "." + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("field '" + field + "." + key + "' has the wrong type");
    }
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

json to_json(const FourierVector& v) {
    std::vector<double> re;
    std::vector<double> im;
    re.reserve(v.size());
    im.reserve(v.size());
    for (const auto& c : v.coeffs()) {
        re.push_back(c.real());
        im.push_back(c.imag());
    }
    return {{"max_index", v.max_index()}, {"re", re}, {"im", im}};
}

FourierVector fourier_from_json(const json& j, const std::string& field) {
    const int M = required<int>(j, "max_index", field);
    const auto re = required<std::vector<double>>(j, "re", field);
    const auto im = j.contains("im") ? required<std::vector<double>>(j, "im", field)
                                     : std::vector<double>(re.size(), 0.0);
    if (M < 0 || re.size() != static_cast<std::size_t>(2 * M + 1) || im.size() != re.size()) {
        throw ConfigError("field '" + field + "' needs re/im arrays of length 2*max_index+1");
    }
    std::vector<Complex> coeffs(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
        coeffs[i] = {re[i], im[i]};
    }
    return FourierVector(M, std::move(coeffs));
}

json to_json(const BoundaryCurve& curve) {
    struct Visitor {
        json operator()(const Disc& d) const { return {{"kind", "disc"}, {"radius", d.radius}}; }
        json operator()(const Ellipse& e) const {
            return {{"kind", "ellipse"}, {"ax", e.semi_axis_x}, {"ay", e.semi_axis_y}};
        }
        json operator()(const TrigCurve& c) const {
            return {{"kind", "trig"}, {"a_coeffs", c.a_coeffs}, {"b_coeffs", c.b_coeffs}};
        }
    };
    return std::visit(Visitor{}, curve.kind());
}

BoundaryCurve curve_from_json(const json& j, const std::string& field) {
    const auto kind = required<std::string>(j, "kind", field);
    try {
        if (kind == "disc") {
            return BoundaryCurve::disc(required<double>(j, "radius", field));
        }
        if (kind == "ellipse") {
            return BoundaryCurve::ellipse(required<double>(j, "ax", field), required<double>(j, "ay", field));
        }
        if (kind == "trig") {
            return BoundaryCurve::trig(required<std::vector<double>>(j, "a_coeffs", field),
                                       required<std::vector<double>>(j, "b_coeffs", field));
        }
    } catch (const DomainError& e) {
        throw ConfigError("field '" + field + "': " + e.what());
    } catch (const InvalidCurveError& e) {
        throw ConfigError("field '" + field + "': " + e.what());
    }
    throw ConfigError("field '" + field + ".kind' has unknown value '" + kind +
                      "' (expected disc, ellipse or trig)");
}

json to_json(const OperatorAssembly& assembly) {
    json columns = json::array();
    for (int k = -assembly.M(); k <= assembly.M(); ++k) {
        columns.push_back(to_json(assembly.column(k)));
    }
    return {{"M", assembly.M()},
            {"m", assembly.m()},
            {"max_tail_fraction", assembly.max_tail_fraction()},
            {"columns", std::move(columns)}};
}

Eigen::MatrixXcd matrix_from_json(const json& j) {
    const int M = required<int>(j, "M", "assembly");
    const auto& columns = j.at("columns");
    if (!columns.is_array() || columns.size() != static_cast<std::size_t>(2 * M + 1)) {
        throw ConfigError("field 'assembly.columns' must hold 2M+1 columns");
    }
    Eigen::MatrixXcd a(2 * M + 1, 2 * M + 1);
    for (int c = 0; c < 2 * M + 1; ++c) {
        const FourierVector col = fourier_from_json(columns[c], "assembly.columns").resized(M);
        a.col(c) = col.to_eigen();
    }
    return a;
}

json to_json(const SolveReport& report) {
    return {{"method", std::string(to_string(report.method))},
            {"n", report.n},
            {"residual_norm", report.residual_norm},
            {"condition_estimate", report.condition_estimate},
            {"solution", to_json(report.solution)}};
}

void write_csv(std::ostream& os, const std::vector<ExperimentRecord>& records) {
    os << kCsvHeader << '\n';
    for (const auto& r : records) {
        os << to_string(r.method) << ',' << r.n << ',' << format_double(r.delta) << ',' << to_string(r.value_kind)
           << ',' << format_double(r.value) << ',' << r.seed << '\n';
    }
}

}  // namespace symm::io
