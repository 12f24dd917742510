#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "chfif/basis.hpp"
#include "chfif/system.hpp"
#include "chfif/transform.hpp"
#include "chfif/wavelet.hpp"

namespace chfif {

using Json = nlohmann::json;

inline constexpr const char* library_version = "0.1.0";

// Tiny arithmetic grammar for exact irrational config constants:
// numbers, + - * /, parentheses, unary minus, and square roots written
// either sqrt7 or sqrt(7).  Throws std::invalid_argument on bad syntax.
double eval_expression(const std::string& text);

// A config number: either a JSON number or an expression string.
double json_number(const Json& value);

// {"knots": [...], "alpha": [...], "beta": [...], "gamma": [...],
//  "y": [...], "z": [...]}; numeric entries may be expression strings.
Json system_to_json(const CoalescenceSystem& sys);
SystemPtr system_from_json(const Json& j);

HiddenParams params_from_json(const Json& j);  // reads alpha/beta/gamma
Json params_to_json(const HiddenParams& params);

// Everything needed to rebuild the basis without re-running the parameter
// search; the stored orthogonalization data doubles as an integrity check
// (loading throws std::runtime_error when it does not match the rebuild).
Json basis_to_json(const ScalingBasis& basis);
ScalingBasis basis_from_json(const Json& j);

// {"A": [[...]], "B": [[...]], "gauge": {"pins": [[m, r, c], ...]}, ...}
Json wavelets_to_json(const WaveletSolution& sol);
WaveletSolution wavelets_from_json(const Json& j);

Json coefficients_to_json(const SignalCoefficients& coeffs);
SignalCoefficients coefficients_from_json(const Json& j);

Json gram_to_json(const std::vector<std::string>& labels, const Eigen::MatrixXd& gram);

// Built-in parameter points; "reference" is the worked two-interval point.
// preset_config returns the exact-expression form that round-trips through
// eval_expression to bitwise-identical doubles.
HiddenParams preset_params(const std::string& name);
Json preset_config(const std::string& name);

std::uint64_t fnv1a64(std::string_view text);

// {"version": ..., "config_hash": ...} attached to every emitted artifact.
Json make_metadata(const Json& config);

// CSV column x,value with an optional header row.
std::vector<std::pair<double, double>> read_signal_csv(std::istream& in);

// Header row then one line per row, full double precision.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace chfif
