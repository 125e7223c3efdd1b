#include "app.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "domsplit/bounds.hpp"
#include "domsplit/cocycle.hpp"
#include "domsplit/domination.hpp"
#include "domsplit/error.hpp"
#include "domsplit/io.hpp"
#include "domsplit/parallel.hpp"
#include "domsplit/shadowlab.hpp"
#include "domsplit/spectrum.hpp"

namespace domsplit::cli {

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNegative = 2;

struct ExperimentConfig {
    std::string command;
    std::string shift;
    std::string cocycle;
    std::string out = "domsplit-out";
    int threads = 0;

    int k = 1;
    int depth = 30;
    int max_period = 8;
    int samples = 64;
    std::uint64_t seed = 1;
    int frames = 20;
    std::string orbit;

    std::vector<double> center;
    double delta = 0.0;
    double gamma = 0.3;
    int radius = 20;
    std::optional<double> lambda;
    double kappa = 0.1;
    int n_max = 200;

    std::string op;
    double beta = 1.0;
    std::optional<double> mu;
    double lambda1 = 1.0;
    double lambda2 = -1.0;
    std::vector<double> lambdas;
    double epsilon = 1e-6;
    double epsilon0 = 0.1;
    double theta = 1.0;
    double omega = 1.0;
};

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

// Everything that determines the result: parameters plus the contents of the
// input files. Output directory and thread count are excluded.
std::string config_digest(const ExperimentConfig& c) {
    Json j{{"command", c.command},  {"k", c.k},           {"depth", c.depth},     {"max_period", c.max_period},
           {"samples", c.samples},  {"seed", c.seed},     {"frames", c.frames},   {"orbit", c.orbit},
           {"center", c.center},    {"delta", c.delta},   {"gamma", c.gamma},     {"radius", c.radius},
           {"kappa", c.kappa},      {"n_max", c.n_max},   {"op", c.op},           {"beta", c.beta},
           {"lambda1", c.lambda1},  {"lambda2", c.lambda2}, {"lambdas", c.lambdas}, {"epsilon", c.epsilon},
           {"epsilon0", c.epsilon0}, {"theta", c.theta},  {"omega", c.omega}};
    j["lambda"] = c.lambda ? Json(*c.lambda) : Json(nullptr);
    j["mu"] = c.mu ? Json(*c.mu) : Json(nullptr);
    j["shift_document"] = c.shift.empty() ? "" : read_file(c.shift);
    j["cocycle_document"] = c.cocycle.empty() ? "" : read_file(c.cocycle);
    return sha256_hex(j.dump());
}

class Output {
public:
    Output(const ExperimentConfig& config) : config_(config), digest_(config_digest(config)) {
        fs::create_directories(config.out);
    }

    void json(const std::string& name, const Json& body) const {
        Json doc{{"tool", "domsplit"},
                 {"tool_version", kToolVersion},
                 {"command", config_.command},
                 {"config_digest", digest_},
                 {"seed", config_.seed}};
        for (const auto& [key, value] : body.items()) doc[key] = value;
        write(name, doc.dump(2) + "\n");
    }

    void csv(const std::string& name, const std::string& body) const {
        write(name, "# domsplit " + std::string(kToolVersion) + " config_digest=" + digest_ +
                        " seed=" + std::to_string(config_.seed) + "\n" + body);
    }

private:
    void write(const std::string& name, const std::string& text) const {
        const fs::path path = fs::path(config_.out) / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error(ErrorCode::FileNotFound, "cannot write " + path.string());
        out << text;
    }

    const ExperimentConfig& config_;
    std::string digest_;
};

// A decimal, or [-]logX / [-]log(X) for the natural logarithm of X.
double parse_exponent(std::string text) {
    std::erase_if(text, [](unsigned char ch) { return std::isspace(ch); });
    double sign = 1.0;
    std::string_view body = text;
    if (!body.empty() && body.front() == '-' && body.starts_with("-log")) {
        sign = -1.0;
        body.remove_prefix(1);
    }
    const bool is_log = body.starts_with("log");
    if (is_log) {
        body.remove_prefix(3);
        if (body.starts_with("(") && body.ends_with(")")) body = body.substr(1, body.size() - 2);
    }
    double value = 0.0;
    const auto [end, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
    if (body.empty() || ec != std::errc() || end != body.data() + body.size() || (is_log && !(value > 0)))
        throw Error(ErrorCode::ConfigParse, "cannot read exponent '" + text + "'");
    return sign * (is_log ? std::log(value) : value);
}

void require_file(const std::string& path, const char* flag) {
    if (path.empty()) throw Error(ErrorCode::ConfigParse, std::string(flag) + " is required for this command");
    if (!fs::exists(path)) throw Error(ErrorCode::FileNotFound, path);
}

ShiftSpace shift_of(const ExperimentConfig& c) {
    require_file(c.shift, "--shift");
    return load_shift(c.shift);
}

FiniteRangeCocycle cocycle_of(const ExperimentConfig& c, const ShiftSpace& shift) {
    require_file(c.cocycle, "--cocycle");
    auto a = load_cocycle(c.cocycle);
    a.check_covers(shift);
    return a;
}

SampleSpec sample_spec(const ExperimentConfig& c) { return {c.max_period, c.samples, c.seed}; }

int cmd_periodic(const ExperimentConfig& c) {
    const auto shift = shift_of(c);
    const Output out(c);
    std::string csv = "period,orbit\n";
    Json counts = Json::array();
    for (int n = 1; n <= c.max_period; ++n) {
        const auto words = enumerate_periodic(shift, n);
        for (const auto& w : words) csv += std::to_string(n) + ",\"" + format_symbols(w.symbols()) + "\"\n";
        counts.push_back(Json{{"period", n}, {"count", words.size()}, {"trace", shift.periodic_count(n)}});
    }
    out.csv("periodic.csv", csv);
    out.json("periodic.json", Json{{"shift", to_json(shift)}, {"counts", counts}});
    return kExitOk;
}

int cmd_spectrum(const ExperimentConfig& c) {
    const auto shift = shift_of(c);
    const auto a = cocycle_of(c, shift);
    const auto report = spectrum_report(a, shift, c.max_period);
    const Output out(c);
    Json body{{"spectrum", to_json(report)}};
    if (!c.center.empty()) {
        body["classification"] = Json{{"center", c.center},
                                      {"delta", c.delta},
                                      {"class", std::string(to_string(classify(report, c.center, c.delta)))}};
    }
    out.json("spectrum.json", body);
    out.csv("spectrum.csv", spectrum_csv(report));
    return kExitOk;
}

int cmd_dominate(const ExperimentConfig& c) {
    const auto shift = shift_of(c);
    const auto a = cocycle_of(c, shift);
    const auto cert = domination_test(a, shift, c.k, c.depth, sample_spec(c));
    const Output out(c);
    out.json("certificate.json", Json{{"certificate", to_json(cert)}});
    out.csv("gap_series.csv", gap_series_csv(cert));
    std::cout << (cert.dominated ? "Dominated" : "NotDominated") << " k=" << cert.k
              << " tau=" << format_double(cert.tau) << " C=" << format_double(cert.C) << "\n";
    return cert.dominated ? kExitOk : kExitNegative;
}

int cmd_split(const ExperimentConfig& c) {
    const auto shift = shift_of(c);
    const auto a = cocycle_of(c, shift);
    Point point;
    if (!c.orbit.empty()) {
        CyclicWord orbit(parse_symbols(c.orbit));
        if (!is_admissible(orbit, shift)) throw Error(ErrorCode::InadmissibleWindow, "orbit is not admissible");
        point = orbit;
    } else {
        std::mt19937_64 rng(c.seed);
        point = random_window(shift, c.depth + c.frames + a.range(), rng);
    }
    const auto frames = construct_splittings(a, point, c.k, c.depth, 0, c.frames + 1);
    const auto check = verify_domination_inequality(a, frames, c.frames);

    const Output out(c);
    Json list = Json::array();
    std::string csv = "position,invariance_residual,separation_angle,log_gap\n";
    for (const auto& f : frames) {
        list.push_back(to_json(f));
        csv += std::to_string(f.position) + "," + format_double(f.residual) + "," + format_double(f.separation) + "," +
               format_double(f.log_gap) + "\n";
    }
    out.json("frames.json", Json{{"point", describe(point)}, {"frames", list}, {"domination_inequality", to_json(check)}});
    out.csv("residuals.csv", csv);
    std::cout << "domination inequality " << (check.pass ? "PASS" : "FAIL") << " tau=" << format_double(check.tau)
              << "\n";
    return check.pass ? kExitOk : kExitNegative;
}

int cmd_shadow(const ExperimentConfig& c) {
    const auto shift = shift_of(c);
    const auto a = cocycle_of(c, shift);
    std::mt19937_64 rng(c.seed);
    const Word omega = random_window(shift, c.radius + a.range(), rng);
    const ShadowPair pair = shadow_pair(omega, shift, c.radius);
    bool all_pass = true;

    std::string terms_csv = "i,norm,bound,status\n";
    for (const auto& t : error_terms(a, pair)) {
        terms_csv += std::to_string(t.i) + "," + format_double(t.norm) + "," + format_double(t.bound) + "," +
                     (t.pass ? "PASS" : "FAIL") + "\n";
        all_pass &= t.pass;
    }

    const int length = static_cast<int>(std::floor(c.gamma * c.radius)) + 1;
    const auto expansion = error_expansion(a, pair, 0, std::min(length, 200));
    std::string expansion_csv = "k,norm,norm_bound,closed_bound,status\n";
    for (const auto& t : expansion.terms) {
        expansion_csv += std::to_string(t.order) + "," + format_double(t.norm) + "," + format_double(t.norm_bound) +
                         "," + format_double(t.closed_bound) + "," + (t.pass ? "PASS" : "FAIL") + "\n";
        all_pass &= t.pass;
    }

    std::string sigma_csv = "i,j,sigma_target,sigma_periodic,difference,bound,status\n";
    for (const auto& row : singular_comparison(a, omega, shift, c.gamma, c.radius)) {
        for (std::size_t j = 0; j < row.difference.size(); ++j)
            sigma_csv += std::to_string(row.length) + "," + std::to_string(j + 1) + "," +
                         format_double(row.sigma_target[j]) + "," + format_double(row.sigma_periodic[j]) + "," +
                         format_double(row.difference[j]) + "," + format_double(row.error_norm) + "," +
                         (row.pass ? "PASS" : "FAIL") + "\n";
        all_pass &= row.pass;
    }

    double lambda = 0.0;
    if (c.lambda) {
        lambda = *c.lambda;
    } else {
        lambda = spectrum_report(a, shift, c.max_period).intervals.front().hi + c.delta;
    }
    const auto kalinin = kalinin_gap(a, shift, lambda, c.depth, sample_spec(c));
    std::string kalinin_csv = "n,excess,n_times_excess,orbit_id\n";
    std::vector<double> xs, ys;
    for (int n = 1; n <= kalinin.depth; ++n) {
        const double e = kalinin.excess[n - 1];
        kalinin_csv += std::to_string(n) + "," + format_double(e) + "," + format_double(n * e) + "," +
                       kalinin.witness[n - 1] + "\n";
        xs.push_back(n);
        ys.push_back(n * e);
    }
    const double growth = kalinin.depth >= 2 ? least_squares_line(xs, ys).slope : 0.0;

    const auto binom = binom_bound_check(c.kappa, c.n_max);

    const Output out(c);
    out.csv("shadow_error_terms.csv", terms_csv);
    out.csv("shadow_expansion.csv", expansion_csv);
    out.csv("shadow_singular.csv", sigma_csv);
    out.csv("kalinin.csv", kalinin_csv);
    out.json("shadow.json",
             Json{{"target", describe(Point{omega})},
                  {"periodic_orbit", format_symbols(pair.orbit.symbols())},
                  {"radius", pair.radius},
                  {"connector_length", pair.connector_length},
                  {"holder_constant", expansion.holder_C},
                  {"mu", expansion.mu},
                  {"expansion_identity_residual", expansion.identity_residual},
                  {"kalinin", Json{{"lambda", lambda}, {"depth", kalinin.depth}, {"n_times_excess_slope", growth}}},
                  {"binomial",
                   Json{{"kappa", binom.kappa},
                        {"n_max", binom.n_max},
                        {"C_kappa", binom.constant},
                        {"argmax", Json::array({binom.argmax_n, binom.argmax_k})},
                        {"C_kappa_from_n2", binom.constant_from_n2}}},
                  {"status", all_pass ? "PASS" : "FAIL"}});
    std::cout << "shadow checks " << (all_pass ? "PASS" : "FAIL") << "\n";
    return all_pass ? kExitOk : kExitNegative;
}

int cmd_bounds(const ExperimentConfig& c) {
    const Output out(c);
    Json body{{"op", c.op}};
    bool positive = true;
    if (c.op == "constant") {
        FeasibilityParams p;
        p.epsilon = c.epsilon;
        p.epsilon0 = c.epsilon0;
        p.kappa = c.kappa;
        p.beta = c.beta;
        p.lambda = c.lambdas;
        p.mu = c.mu.value_or(c.lambdas.empty() ? 0.0 : c.lambdas.front());
        const auto r = gamma_feasible_constant(p, c.k);
        body["result"] = to_json(r);
        positive = r.feasible;
    } else if (c.op == "narrow") {
        const double mu = c.mu.value_or(c.lambda1 + c.delta);
        const auto r = gamma_feasible_narrow(c.beta, mu, c.lambda1, c.lambda2, c.delta, c.epsilon, c.kappa);
        body["result"] = to_json(r);
        positive = r.feasible;
    } else if (c.op == "delta-max") {
        body["delta_max"] = delta_max(c.beta, c.lambda1, c.lambda2);
    } else if (c.op == "sl2") {
        const bool ok = sl2_feasible(c.lambda.value_or(1.0), c.beta, c.delta);
        body["feasible"] = ok;
        positive = ok;
    } else if (c.op == "conjugacy-delta") {
        const auto r = conjugacy_delta(c.theta, c.omega, c.lambda.value_or(1.0));
        body["delta"] = r.delta;
        body["binding"] = r.binding;
    } else if (c.op == "threshold") {
        body["threshold"] = conjugacy_threshold();
    } else {
        throw Error(ErrorCode::ConfigParse,
                    "--op must be one of constant, narrow, delta-max, sl2, conjugacy-delta, threshold");
    }
    out.json("bounds.json", body);
    std::cout << body.dump() << "\n";
    return positive ? kExitOk : kExitNegative;
}

std::string join(const Json& value) {
    if (value.is_array()) {
        std::string s;
        for (const auto& v : value) {
            if (!s.empty()) s += ',';
            s += v.is_string() ? v.get<std::string>() : v.dump();
        }
        return s;
    }
    return value.is_string() ? value.get<std::string>() : value.dump();
}

// Turns a TOML experiment file into command-line arguments; explicit flags
// given after it take precedence.
std::vector<std::string> config_arguments(const fs::path& file) {
    const Json doc = load_document(file);
    const fs::path base = file.parent_path();
    auto flag = [](std::string key) {
        for (char& ch : key)
            if (ch == '_') ch = '-';
        return "--" + key;
    };
    auto resolve = [&](const std::string& key, const Json& value) {
        std::string v = join(value);
        if ((key == "shift" || key == "cocycle") && fs::path(v).is_relative()) v = (base / v).string();
        return v;
    };

    if (!doc.contains("command") || !doc["command"].is_object() || !doc["command"].contains("name"))
        throw Error(ErrorCode::ConfigParse, "config needs a [command] table with a 'name'");
    std::vector<std::string> out{doc["command"]["name"].get<std::string>()};
    for (const auto& [key, value] : doc.items()) {
        if (key == "command") continue;
        out.push_back(flag(key));
        out.push_back(resolve(key, value));
    }
    for (const auto& [key, value] : doc["command"].items()) {
        if (key == "name") continue;
        out.push_back(flag(key));
        out.push_back(resolve(key, value));
    }
    return out;
}

}  // namespace

int run(const std::vector<std::string>& raw_args) {
    ExperimentConfig config;
    std::vector<std::string> args(raw_args.begin() + (raw_args.empty() ? 0 : 1), raw_args.end());

    try {
        for (std::size_t i = 0; i + 1 < args.size(); ++i) {
            if (args[i] == "--config") {
                auto from_file = config_arguments(args[i + 1]);
                args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
                // Subcommand from the file comes first; explicit flags follow it.
                std::vector<std::string> merged = from_file;
                for (const auto& a : args)
                    if (a != from_file.front()) merged.push_back(a);
                args = std::move(merged);
                break;
            }
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }

    CLI::App app{"Dominated splittings of linear cocycles over subshifts of finite type"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    auto common = [&](CLI::App* sub) {
        sub->add_option("--shift", config.shift, "shift space document (JSON or TOML)");
        sub->add_option("--out", config.out, "output directory");
        sub->add_option("--threads", config.threads, "OpenMP worker threads (0 = default)");
        sub->add_option("--seed", config.seed, "seed for random windows");
        sub->add_option("--max-period", config.max_period, "largest period enumerated");
    };
    auto with_cocycle = [&](CLI::App* sub) {
        common(sub);
        sub->add_option("--cocycle", config.cocycle, "cocycle document (JSON or TOML)");
        sub->add_option("--k", config.k, "splitting index");
        sub->add_option("--depth", config.depth, "product depth N");
        sub->add_option("--samples", config.samples, "number of random windows");
    };

    auto* periodic = app.add_subcommand("periodic", "list periodic orbits");
    common(periodic);
    auto* spectrum = app.add_subcommand("spectrum", "periodic exponent intervals and classification");
    with_cocycle(spectrum);
    std::vector<std::string> center_text;
    spectrum->add_option("--center", center_text, "center exponents, e.g. 0.69,-0.69 or log2,-log2")->delimiter(',');
    spectrum->add_option("--delta", config.delta, "narrowness");
    auto* dominate = app.add_subcommand("dominate", "singular value gap test");
    with_cocycle(dominate);
    auto* split = app.add_subcommand("split", "construct and verify the splitting along an orbit");
    with_cocycle(split);
    split->add_option("--frames", config.frames, "number of steps along the orbit");
    split->add_option("--orbit", config.orbit, "periodic orbit to use instead of a random window");
    auto* shadow = app.add_subcommand("shadow", "shadowing error tables");
    with_cocycle(shadow);
    shadow->add_option("--radius", config.radius, "agreement radius n of the shadowing orbit");
    shadow->add_option("--gamma", config.gamma, "fraction gamma in (0,1)");
    shadow->add_option("--lambda", config.lambda, "top exponent for the norm growth check");
    shadow->add_option("--delta", config.delta, "added to the spectrum top exponent when --lambda is absent");
    shadow->add_option("--kappa", config.kappa, "binomial estimate kappa");
    shadow->add_option("--n-max", config.n_max, "binomial estimate range");
    auto* bounds = app.add_subcommand("bounds", "feasibility calculators");
    bounds->add_option("--out", config.out, "output directory");
    bounds->add_option("--op", config.op, "constant|narrow|delta-max|sl2|conjugacy-delta|threshold")->required();
    bounds->add_option("--k", config.k, "index for the constant-data system");
    bounds->add_option("--beta", config.beta);
    bounds->add_option("--mu", config.mu);
    bounds->add_option("--lambda", config.lambda, "lambda for sl2 / conjugacy-delta");
    bounds->add_option("--lambda1", config.lambda1);
    bounds->add_option("--lambda2", config.lambda2);
    bounds->add_option("--lambdas", config.lambdas, "exponent list for the constant-data system")->delimiter(',');
    bounds->add_option("--delta", config.delta);
    bounds->add_option("--epsilon", config.epsilon);
    bounds->add_option("--epsilon0", config.epsilon0);
    bounds->add_option("--kappa", config.kappa);
    bounds->add_option("--theta", config.theta);
    bounds->add_option("--omega", config.omega);

    std::vector<const char*> argv{"domsplit"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitError;
    }

    try {
        set_thread_count(config.threads);
        config.command = app.get_subcommands().front()->get_name();
        for (const auto& text : center_text) config.center.push_back(parse_exponent(text));
        if (config.command == "periodic") return cmd_periodic(config);
        if (config.command == "spectrum") return cmd_spectrum(config);
        if (config.command == "dominate") return cmd_dominate(config);
        if (config.command == "split") return cmd_split(config);
        if (config.command == "shadow") return cmd_shadow(config);
        if (config.command == "bounds") return cmd_bounds(config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

}  // namespace domsplit::cli
