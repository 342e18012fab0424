#pragma once

#include "symm/curve.hpp"
#include "symm/fourier.hpp"
#include "symm/harness.hpp"
#include "symm/operator.hpp"
#include "symm/solvers.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace symm::io {

using nlohmann::json;

/// {"max_index": M, "re": [...], "im": [...]}
json to_json(const FourierVector& v);
FourierVector fourier_from_json(const json& j, const std::string& field = "coeffs");

/// {"kind":"disc","radius":r} | {"kind":"ellipse","ax":..,"ay":..} |
/// {"kind":"trig","a_coeffs":[..],"b_coeffs":[..]}
json to_json(const BoundaryCurve& curve);
BoundaryCurve curve_from_json(const json& j, const std::string& field = "curve");

/// {"M":..,"m":..,"max_tail_fraction":..,"columns":[FourierVector...]}, column i holds K e^{i(i-M)t}.
json to_json(const OperatorAssembly& assembly);
/// Induced matrix from an assembly dump.
Eigen::MatrixXcd matrix_from_json(const json& j);

/// {"method","n","residual_norm","condition_estimate","solution":{...}}
json to_json(const SolveReport& report);

inline constexpr const char* kCsvHeader = "method,n,delta,value_kind,value,seed";

/// Writes the header line and one row per record; doubles use 17 significant digits.
void write_csv(std::ostream& os, const std::vector<ExperimentRecord>& records);

}  // namespace symm::io
