#include "domsplit/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "domsplit/error.hpp"

namespace domsplit {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::FileNotFound, path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

Json toml_to_json(const toml::node& node) {
    if (const auto* t = node.as_table()) {
        Json out = Json::object();
        for (const auto& [key, value] : *t) out[std::string(key.str())] = toml_to_json(value);
        return out;
    }
    if (const auto* a = node.as_array()) {
        Json out = Json::array();
        for (const auto& value : *a) out.push_back(toml_to_json(value));
        return out;
    }
    if (const auto* v = node.as_integer()) return v->get();
    if (const auto* v = node.as_floating_point()) return v->get();
    if (const auto* v = node.as_boolean()) return v->get();
    if (const auto* v = node.as_string()) return v->get();
    throw Error(ErrorCode::ConfigParse, "unsupported TOML value type");
}

}  // namespace

Json parse_toml(const std::string& text) {
    try {
        return toml_to_json(toml::parse(text));
    } catch (const toml::parse_error& e) {
        throw Error(ErrorCode::ConfigParse, std::string(e.description()));
    }
}

Json load_document(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    if (path.extension() == ".toml") return parse_toml(text);
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ConfigParse, path.string() + ": " + e.what());
    }
}

namespace {

template <typename T>
T field(const Json& doc, const char* key) {
    if (!doc.contains(key)) throw Error(ErrorCode::ConfigParse, std::string("missing field '") + key + "'");
    try {
        return doc.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ConfigParse, std::string("field '") + key + "': " + e.what());
    }
}

std::vector<Symbol> parse_window_key(const std::string& key, int range) {
    if (key.find(',') == std::string::npos && key.size() == static_cast<std::size_t>(2 * range + 1) && range > 0) {
        // Compact form "121" for single-digit alphabets.
        std::vector<Symbol> out;
        for (char c : key) {
            if (c < '1' || c > '9') throw Error(ErrorCode::ConfigParse, "bad window key '" + key + "'");
            out.push_back(c - '0');
        }
        return out;
    }
    return parse_symbols(key);
}

}  // namespace

ShiftSpace shift_from_json(const Json& doc) {
    const auto transition = field<TransitionMatrix>(doc, "transition");
    if (doc.contains("alphabet") && field<int>(doc, "alphabet") != static_cast<int>(transition.size()))
        throw Error(ErrorCode::ConfigParse, "alphabet size does not match the transition matrix");
    return ShiftSpace::build(transition);
}

Json to_json(const ShiftSpace& shift) {
    return Json{{"alphabet", shift.alphabet_size()},
                {"transition", shift.transition()},
                {"closing_constant", shift.closing_constant()}};
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw Error(ErrorCode::ConfigParse, "matrix must be a non-empty nested array");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j.front().size());
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols)
            throw Error(ErrorCode::ConfigParse, "ragged matrix");
        for (Eigen::Index c = 0; c < cols; ++c) {
            if (!j[r][c].is_number()) throw Error(ErrorCode::ConfigParse, "matrix entries must be numbers");
            m(r, c) = j[r][c].get<double>();
        }
    }
    return m;
}

Json matrix_to_json(const Matrix& m) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        out.push_back(row);
    }
    return out;
}

FiniteRangeCocycle cocycle_from_json(const Json& doc) {
    const int d = field<int>(doc, "dimension");
    const int r = doc.contains("range") ? field<int>(doc, "range") : 0;
    const double beta = doc.contains("beta") ? field<double>(doc, "beta") : 1.0;
    if (!doc.contains("matrices") || !doc.at("matrices").is_object())
        throw Error(ErrorCode::ConfigParse, "'matrices' must be an object keyed by window");
    FiniteRangeCocycle::Table table;
    for (const auto& [key, value] : doc.at("matrices").items()) table[parse_window_key(key, r)] = matrix_from_json(value);
    std::optional<double> mu;
    if (doc.contains("mu")) mu = field<double>(doc, "mu");
    return FiniteRangeCocycle::create(d, r, beta, table, mu);
}

Json to_json(const FiniteRangeCocycle& a) {
    Json matrices = Json::object();
    for (std::size_t i = 0; i < a.size(); ++i) matrices[format_symbols(a.windows()[i])] = matrix_to_json(a.matrices()[i]);
    return Json{{"dimension", a.dimension()},
                {"range", a.range()},
                {"beta", a.holder_exponent()},
                {"mu", a.norm_bound()},
                {"matrices", matrices}};
}

ShiftSpace load_shift(const std::filesystem::path& path) { return shift_from_json(load_document(path)); }

FiniteRangeCocycle load_cocycle(const std::filesystem::path& path) { return cocycle_from_json(load_document(path)); }

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

namespace {

Json number(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

Json number_list(const std::vector<double>& values) {
    Json out = Json::array();
    for (double v : values) out.push_back(number(v));
    return out;
}

}  // namespace

Json to_json(const SpectrumReport& report) {
    Json intervals = Json::array();
    for (std::size_t i = 0; i < report.intervals.size(); ++i) {
        const auto& iv = report.intervals[i];
        intervals.push_back(Json{{"index", i + 1},
                                 {"lo", number(iv.lo)},
                                 {"hi", number(iv.hi)},
                                 {"lo_witness", format_symbols(iv.lo_witness.symbols())},
                                 {"hi_witness", format_symbols(iv.hi_witness.symbols())}});
    }
    return Json{{"max_period", report.max_period}, {"orbit_count", report.orbits.size()}, {"intervals", intervals}};
}

std::string spectrum_csv(const SpectrumReport& report) {
    std::string out = "period,orbit";
    const std::size_t d = report.intervals.size();
    for (std::size_t i = 1; i <= d; ++i) out += ",chi_" + std::to_string(i);
    out += '\n';
    for (const auto& e : report.orbits) {
        out += std::to_string(e.orbit.period()) + ",\"" + format_symbols(e.orbit.symbols()) + "\"";
        for (double chi : e.exponents) out += "," + format_double(chi);
        out += '\n';
    }
    return out;
}

Json to_json(const DominationCertificate& cert) {
    Json per_n = Json::array();
    for (std::size_t n = 0; n < cert.worst_gap.size(); ++n)
        per_n.push_back(Json{{"n", n + 1}, {"max_gap", number(cert.worst_gap[n])}, {"orbit", cert.worst_sample[n]}});
    return Json{{"k", cert.k},
                {"depth", cert.depth},
                {"verdict", cert.dominated ? "Dominated" : "NotDominated"},
                {"evidence", "empirical"},
                {"C", number(cert.C)},
                {"fit_C", number(cert.fit_C)},
                {"tau", number(cert.tau)},
                {"envelope_C", number(cert.envelope_C)},
                {"envelope_tau", number(cert.envelope_tau)},
                {"envelope_excess", number(cert.envelope_excess)},
                {"fit_residual", number(cert.fit_residual)},
                {"samples",
                 Json{{"max_period", cert.samples.max_period},
                      {"random_windows", cert.samples.random_windows},
                      {"seed", cert.samples.seed},
                      {"periodic_count", cert.periodic_samples},
                      {"random_count", cert.random_samples}}},
                {"max_gap_per_n", per_n}};
}

std::string gap_series_csv(const DominationCertificate& cert) {
    std::string out = "n,g_n,orbit_id\n";
    for (std::size_t s = 0; s < cert.series.size(); ++s)
        for (std::size_t n = 0; n < cert.series[s].size(); ++n)
            out += std::to_string(n + 1) + "," + format_double(cert.series[s][n]) + "," + cert.labels[s] + "\n";
    return out;
}

Json to_json(const SplittingFrame& frame) {
    return Json{{"base", describe(frame.base)},
                {"position", frame.position},
                {"k", frame.k},
                {"depth", frame.depth},
                {"E", matrix_to_json(frame.E)},
                {"F", matrix_to_json(frame.F)},
                {"invariance_residual", number(frame.residual)},
                {"separation_angle", number(frame.separation)},
                {"log_gap", number(frame.log_gap)}};
}

Json to_json(const DominationInequalityReport& report) {
    return Json{{"verdict", report.pass ? "PASS" : "FAIL"},
                {"tau", number(report.tau)},
                {"C", number(report.C)},
                {"max_coupling", number(report.max_coupling)},
                {"ratios", number_list(report.ratios)}};
}

Json to_json(const FeasibilityResult& r) {
    return Json{{"feasible", r.feasible},
                {"gamma_interval", Json::array({number(r.lo), number(r.hi)})},
                {"binding_constraints", r.binding},
                {"ineq4", r.ineq4}};
}

}  // namespace domsplit
