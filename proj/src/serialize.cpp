#include "chfif/serialize.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace chfif {

namespace {

// recursive-descent over a raw pointer; each rule leaves *pos past its text
struct ExprParser {
    const char* pos;

    void skip() {
        while (*pos == ' ' || *pos == '\t') ++pos;
    }

    double primary() {
        skip();
        if (*pos == '(') {
            ++pos;
            const double v = expr();
            skip();
            if (*pos != ')') throw std::invalid_argument("expression: missing ')'");
            ++pos;
            return v;
        }
        if (*pos == '-') {
            ++pos;
            return -primary();
        }
        if (std::strncmp(pos, "sqrt", 4) == 0) {
            pos += 4;
            skip();
            double arg = 0.0;
            if (*pos == '(') {
                ++pos;
                arg = expr();
                skip();
                if (*pos != ')') throw std::invalid_argument("expression: missing ')'");
                ++pos;
            } else if (std::isdigit(static_cast<unsigned char>(*pos))) {
                char* end = nullptr;
                arg = std::strtod(pos, &end);
                pos = end;
            } else {
                throw std::invalid_argument("expression: sqrt needs an argument");
            }
            if (arg < 0.0) throw std::invalid_argument("expression: sqrt of a negative number");
            return std::sqrt(arg);
        }
        if (std::isdigit(static_cast<unsigned char>(*pos)) || *pos == '.') {
            char* end = nullptr;
            const double v = std::strtod(pos, &end);
            if (end == pos) throw std::invalid_argument("expression: bad number");
            pos = end;
            return v;
        }
        throw std::invalid_argument(std::string("expression: unexpected '") + *pos + "'");
    }

    double term() {
        double v = primary();
        for (;;) {
            skip();
            if (*pos == '*') {
                ++pos;
                v *= primary();
            } else if (*pos == '/') {
                ++pos;
                v /= primary();
            } else {
                return v;
            }
        }
    }

    double expr() {
        double v = term();
        for (;;) {
            skip();
            if (*pos == '+') {
                ++pos;
                v += term();
            } else if (*pos == '-') {
                ++pos;
                v -= term();
            } else {
                return v;
            }
        }
    }
};

std::vector<double> number_list(const Json& j, const char* key) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("missing field: ") + key);
    std::vector<double> out;
    for (const auto& v : j.at(key)) out.push_back(json_number(v));
    return out;
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const Json& j) {
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = rows == 0 ? 0 : static_cast<Eigen::Index>(j.at(0).size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (static_cast<Eigen::Index>(j.at(r).size()) != cols)
            throw std::invalid_argument("matrix rows have unequal lengths");
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = json_number(j.at(r).at(c));
    }
    return m;
}

Json block_to_json(const CoefficientBlock& blk) {
    return Json{{"first", blk.first}, {"values", blk.values}};
}

CoefficientBlock block_from_json(const Json& j) {
    CoefficientBlock blk;
    blk.first = j.at("first").get<int>();
    for (const auto& v : j.at("values")) blk.values.push_back(json_number(v));
    return blk;
}

}  // namespace

double eval_expression(const std::string& text) {
    ExprParser p{text.c_str()};
    const double v = p.expr();
    p.skip();
    if (*p.pos != '\0')
        throw std::invalid_argument(std::string("expression: trailing text '") + p.pos + "'");
    return v;
}

double json_number(const Json& value) {
    if (value.is_number()) return value.get<double>();
    if (value.is_string()) return eval_expression(value.get<std::string>());
    throw std::invalid_argument("expected a number or an expression string");
}

Json system_to_json(const CoalescenceSystem& sys) {
    return Json{{"knots", sys.knots().points()}, {"alpha", sys.params().alpha},
                {"beta", sys.params().beta},     {"gamma", sys.params().gamma},
                {"y", sys.data().y},             {"z", sys.data().z}};
}

SystemPtr system_from_json(const Json& j) {
    Knots knots(number_list(j, "knots"));
    HiddenParams params;
    params.alpha = number_list(j, "alpha");
    params.beta = number_list(j, "beta");
    params.gamma = number_list(j, "gamma");
    DataPoints data;
    data.y = number_list(j, "y");
    data.z = number_list(j, "z");
    return make_system(std::move(knots), std::move(params), std::move(data));
}

HiddenParams params_from_json(const Json& j) {
    HiddenParams params;
    params.alpha = number_list(j, "alpha");
    params.beta = number_list(j, "beta");
    params.gamma = number_list(j, "gamma");
    return params;
}

Json params_to_json(const HiddenParams& params) {
    return Json{{"alpha", params.alpha}, {"beta", params.beta}, {"gamma", params.gamma}};
}

Json basis_to_json(const ScalingBasis& basis) {
    Json j = params_to_json(basis.params);
    j["n"] = basis.n;
    j["normalized"] = basis.normalized;
    j["knots"] = Knots::uniform(static_cast<std::size_t>(basis.n)).points();
    j["gs_coeffs"] = matrix_to_json(basis.gs_coeffs);
    j["concat_scale"] = basis.concat_scale;
    j["tparams"] = Json{{"r", basis.tparams.r}, {"s", basis.tparams.s}, {"u", basis.tparams.u}};
    return j;
}

ScalingBasis basis_from_json(const Json& j) {
    const int n = j.at("n").get<int>();
    const bool normalized = j.value("normalized", true);
    ScalingBasis basis = build_basis(n, params_from_json(j), normalized);

    // integrity: the stored orthogonalization must match the rebuild
    const Eigen::MatrixXd stored = matrix_from_json(j.at("gs_coeffs"));
    if (stored.rows() != basis.gs_coeffs.rows() || stored.cols() != basis.gs_coeffs.cols() ||
        (stored - basis.gs_coeffs).lpNorm<Eigen::Infinity>() > 1e-9 ||
        std::abs(j.at("concat_scale").get<double>() - basis.concat_scale) > 1e-9)
        throw std::runtime_error("stored basis does not match a rebuild from its parameters");
    return basis;
}

Json wavelets_to_json(const WaveletSolution& sol) {
    Json pins = Json::array();
    for (const auto& p : sol.gauge.pins) pins.push_back(Json::array({p[0], p[1], p[2]}));
    return Json{{"A", matrix_to_json(sol.a)},
                {"B", matrix_to_json(sol.b)},
                {"gauge", Json{{"pins", std::move(pins)}}},
                {"residual", sol.residual},
                {"iterations", sol.iterations},
                {"converged", sol.converged}};
}

WaveletSolution wavelets_from_json(const Json& j) {
    WaveletSolution sol;
    sol.a = matrix_from_json(j.at("A"));
    sol.b = matrix_from_json(j.at("B"));
    if (sol.a.rows() != 3 || sol.a.cols() != 7 || sol.b.rows() != 3 || sol.b.cols() != 7)
        throw std::invalid_argument("wavelet solution must carry 3x7 knot-value arrays");
    sol.gauge.pins.clear();
    if (j.contains("gauge"))
        for (const auto& p : j.at("gauge").at("pins"))
            sol.gauge.pins.push_back({p.at(0).get<int>(), p.at(1).get<int>(), p.at(2).get<int>()});
    sol.residual = j.value("residual", 0.0);
    sol.iterations = j.value("iterations", 0);
    sol.converged = j.value("converged", false);
    return sol;
}

Json coefficients_to_json(const SignalCoefficients& coeffs) {
    Json scaling = Json::array();
    for (const auto& blk : coeffs.scaling) scaling.push_back(block_to_json(blk));
    Json detail = Json::array();
    for (const auto& blk : coeffs.detail) detail.push_back(block_to_json(blk));
    return Json{{"level", coeffs.level}, {"scaling", std::move(scaling)},
                {"detail", std::move(detail)}};
}

SignalCoefficients coefficients_from_json(const Json& j) {
    SignalCoefficients coeffs;
    coeffs.level = j.at("level").get<int>();
    for (const auto& blk : j.at("scaling")) coeffs.scaling.push_back(block_from_json(blk));
    if (j.contains("detail"))
        for (const auto& blk : j.at("detail")) coeffs.detail.push_back(block_from_json(blk));
    return coeffs;
}

Json gram_to_json(const std::vector<std::string>& labels, const Eigen::MatrixXd& gram) {
    return Json{{"labels", labels}, {"gram", matrix_to_json(gram)}};
}

HiddenParams preset_params(const std::string& name) {
    return params_from_json(preset_config(name));
}

Json preset_config(const std::string& name) {
    if (name == "reference") {
        return Json{{"n", 2},
                    {"alpha", Json::array({0.0, "sqrt7-3"})},
                    {"beta", Json::array({"1/20", "(3-sqrt7)/20"})},
                    {"gamma", Json::array({"-9/10", "(-67+29*sqrt7)/10"})}};
    }
    throw std::invalid_argument("unknown preset: " + name);
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 14695981039346656037ull;
    for (const char ch : text) {
        hash ^= static_cast<unsigned char>(ch);
        hash *= 1099511628211ull;
    }
    return hash;
}

Json make_metadata(const Json& config) {
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(config.dump())));
    return Json{{"version", library_version}, {"config_hash", hex}};
}

std::vector<std::pair<double, double>> read_signal_csv(std::istream& in) {
    std::vector<std::pair<double, double>> samples;
    std::string line;
    bool first_line = true;
    while (std::getline(in, line)) {
        if (line.empty() || line.back() == '\r') {
            if (!line.empty()) line.pop_back();
            if (line.empty()) continue;
        }
        const std::size_t start = line.find_first_not_of(" \t");
        if (start != std::string::npos && line[start] == '#') continue;
        std::string fields = line;
        for (auto& ch : fields)
            if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
        std::istringstream row(fields);
        double x = 0.0, value = 0.0;
        if (row >> x >> value) {
            samples.emplace_back(x, value);
        } else if (first_line) {
            // header row
        } else {
            throw std::invalid_argument("signal csv: malformed row: " + line);
        }
        first_line = false;
    }
    return samples;
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    for (std::size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << header[i];
    out << "\n";
    char buf[32];
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
            out << (i ? "," : "") << buf;
        }
        out << "\n";
    }
}

}  // namespace chfif
