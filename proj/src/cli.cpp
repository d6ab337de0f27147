#include "qfgcpe/cli.hpp"

#include "qfgcpe/chaos.hpp"
#include "qfgcpe/entropy.hpp"
#include "qfgcpe/errors.hpp"
#include "qfgcpe/estimator.hpp"
#include "qfgcpe/montecarlo.hpp"
#include "qfgcpe/orderings.hpp"
#include "qfgcpe/quantile_models.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace qfgcpe::cli {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "qfgcpe 0.1.0";

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

// Buffered, atomic emission: nothing reaches the sink until the whole
// subcommand succeeded.
void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
    f << text;
    if (!f) throw std::runtime_error("failed writing output file: " + out_path);
}

entropy::Method method_from_string(const std::string& s) {
    if (s == "auto") return entropy::Method::auto_select;
    if (s == "closed") return entropy::Method::closed_form;
    if (s == "quadrature") return entropy::Method::quadrature;
    throw std::invalid_argument("unknown method '" + s + "' (auto|closed|quadrature)");
}

const char* method_to_string(entropy::Method m) {
    switch (m) {
        case entropy::Method::closed_form: return "closed_form";
        case entropy::Method::quadrature: return "quadrature";
        default: return "auto";
    }
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("bad integer '" + tok + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty integer list");
    return out;
}

Sample read_sample_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open input file: " + path);
    Sample s;
    std::string line;
    bool first = true;
    while (std::getline(f, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        if (first && line == "x") { // optional header
            first = false;
            continue;
        }
        first = false;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(line, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad sample value '" + line + "' in " + path);
        }
        if (used != line.size() || !std::isfinite(v))
            throw std::invalid_argument("bad sample value '" + line + "' in " + path);
        s.values.push_back(v);
    }
    std::sort(s.values.begin(), s.values.end());
    s.source = "file:" + path;
    return s;
}

json params_to_json(const std::map<std::string, double>& params) {
    json j = json::object();
    for (const auto& [k, v] : params) j[k] = v;
    return j;
}

json entropy_record(const models::QuantileModel& m, double eta,
                    std::optional<double> v, const entropy::EntropyResult& r) {
    json j;
    j["model"] = m.name();
    j["params"] = params_to_json(m.params());
    j["eta"] = eta;
    if (v) j["v"] = *v;
    j["method_used"] = method_to_string(r.method_used);
    j["value"] = r.value;
    j["est_abs_err"] = r.est_abs_err;
    return j;
}

orderings::OrderKind kind_from_string(const std::string& s) {
    if (s == "HQ") return orderings::OrderKind::HQ;
    if (s == "RHQ") return orderings::OrderKind::RHQ;
    if (s == "disp") return orderings::OrderKind::disp;
    if (s == "QFGCPE") return orderings::OrderKind::QFGCPE;
    if (s == "DQFGCPE") return orderings::OrderKind::DQFGCPE;
    throw std::invalid_argument("unknown order kind '" + s +
                                "' (HQ|RHQ|disp|QFGCPE|DQFGCPE)");
}

const char* relation_to_string(orderings::Relation r) {
    switch (r) {
        case orderings::Relation::holds: return "holds";
        case orderings::Relation::fails: return "fails";
        default: return "inconclusive";
    }
}

struct ComputationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

[[noreturn]] void rethrow_computation(const std::string& module, const std::string& query) {
    try {
        throw;
    } catch (const std::exception& e) {
        throw ComputationError("[" + module + "] " + query + ": " + e.what());
    }
}

} // namespace

std::map<std::string, double> parse_params(const std::string& text) {
    std::map<std::string, double> out;
    if (text.empty()) return out;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("malformed parameter '" + tok +
                                        "' (expected key=value)");
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(val, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("non-numeric value for parameter '" + key + "': '" +
                                        val + "'");
        }
        if (used != val.size() || !std::isfinite(x))
            throw std::invalid_argument("non-numeric value for parameter '" + key + "': '" +
                                        val + "'");
        if (!out.emplace(key, x).second)
            throw std::invalid_argument("duplicate parameter '" + key + "'");
    }
    return out;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::istringstream is(text);
        std::string a, b, c;
        if (!std::getline(is, a, ':') || !std::getline(is, b, ':') || !std::getline(is, c))
            throw std::invalid_argument("bad grid '" + text + "' (expected start:end:step)");
        const double start = std::stod(a), end = std::stod(b), step = std::stod(c);
        if (!(step > 0.0)) throw std::invalid_argument("grid step must be > 0");
        if (end < start) throw std::invalid_argument("grid end must be >= start");
        const int n = static_cast<int>(std::floor((end - start) / step + 1e-9)) + 1;
        out.reserve(n);
        for (int i = 0; i < n; ++i) out.push_back(start + i * step);
        return out;
    }
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("bad grid value '" + tok + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty grid");
    return out;
}

int run(int argc, const char* const* argv) {
    CLI::App app{"Quantile-based fractional generalized cumulative past entropy toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(0, 1);

    std::uint64_t seed = 42;
    std::string out_path;
    std::string format; // empty = per-subcommand default
    app.add_option("--seed", seed, "global RNG seed")->capture_default_str();
    app.add_option("--out", out_path, "output path (default stdout)");
    app.add_option("--format", format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    // compute / dynamic
    std::string dist, params_text, method_text = "auto";
    double eta = 0.5, v = 0.5;
    auto* compute = app.add_subcommand("compute", "static entropy of a catalog model");
    compute->fallthrough();
    compute->add_option("--dist", dist, "model kind")->required();
    compute->add_option("--params", params_text, "comma-separated key=value list");
    compute->add_option("--eta", eta, "fractional order (> 0)")->required();
    compute->add_option("--method", method_text, "auto|closed|quadrature")
        ->capture_default_str();

    auto* dynamic = app.add_subcommand("dynamic", "dynamic entropy at inspection level v");
    dynamic->fallthrough();
    dynamic->add_option("--dist", dist, "model kind")->required();
    dynamic->add_option("--params", params_text, "comma-separated key=value list");
    dynamic->add_option("--eta", eta, "fractional order (> 0)")->required();
    dynamic->add_option("--v", v, "inspection level in (0,1)")->required();
    dynamic->add_option("--method", method_text, "auto|closed|quadrature")
        ->capture_default_str();

    // estimate
    std::string input_path;
    int boot_B = 0;
    double boot_level = 0.95;
    auto* estimate = app.add_subcommand("estimate", "nonparametric estimate from a sample file");
    estimate->fallthrough();
    estimate->add_option("--input", input_path, "sample file, one value per line")->required();
    estimate->add_option("--eta", eta, "fractional order (> 0)")->required();
    estimate->add_option("--bootstrap", boot_B, "bootstrap replicates (0 = no CI)");
    estimate->add_option("--level", boot_level, "CI level")->capture_default_str();

    // simulate
    std::string n_text;
    int reps = 500;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo bias/MSE/coverage study");
    simulate->fallthrough();
    simulate->add_option("--dist", dist, "model kind")->required();
    simulate->add_option("--params", params_text, "comma-separated key=value list");
    simulate->add_option("--eta", eta, "fractional order (> 0)")->required();
    simulate->add_option("--n", n_text, "comma-separated sample sizes")->required();
    simulate->add_option("--reps", reps, "replications per n")->capture_default_str();
    simulate->add_option("--bootstrap", boot_B, "bootstrap replicates (0 = no coverage)");
    simulate->add_option("--level", boot_level, "CI level")->capture_default_str();

    // chaos (+ nested bifurcation)
    std::string c_grid_text = "1:4:0.005", eta_grid_text = "0.25,0.5,0.75";
    chaos::OrbitConfig orbit_cfg;
    int keep = 200;
    auto* chaos_cmd = app.add_subcommand("chaos", "logistic-map entropy sweep");
    chaos_cmd->fallthrough();
    chaos_cmd->add_option("--c-grid", c_grid_text, "c values, list or start:end:step")
        ->capture_default_str();
    chaos_cmd->add_option("--eta", eta_grid_text, "eta values")->capture_default_str();
    chaos_cmd->add_option("--x0", orbit_cfg.x0, "initial point")->capture_default_str();
    chaos_cmd->add_option("--burn", orbit_cfg.burn_in, "burn-in iterations")
        ->capture_default_str();
    chaos_cmd->add_option("--len", orbit_cfg.length, "orbit sample length")
        ->capture_default_str();
    auto* bifurcation = chaos_cmd->add_subcommand("bifurcation", "plot-ready (c, x) points");
    bifurcation->fallthrough();
    bifurcation->add_option("--keep", keep, "post-burn-in iterates per c")
        ->capture_default_str();

    // orderings
    std::string kind_text, dist_b, params_b_text, v_grid_text;
    int grid = 1000;
    auto* orderings_cmd = app.add_subcommand("orderings", "stochastic-order check on a grid");
    orderings_cmd->fallthrough();
    orderings_cmd->add_option("--kind", kind_text, "HQ|RHQ|disp|QFGCPE|DQFGCPE")->required();
    orderings_cmd->add_option("--dist-a", dist, "first model kind")->required();
    orderings_cmd->add_option("--params-a", params_text, "first model params");
    orderings_cmd->add_option("--dist-b", dist_b, "second model kind")->required();
    orderings_cmd->add_option("--params-b", params_b_text, "second model params");
    orderings_cmd->add_option("--eta", eta, "fractional order (entropy kinds)");
    orderings_cmd->add_option("--grid", grid, "grid size")->capture_default_str();
    orderings_cmd->add_option("--v-grid", v_grid_text, "explicit v grid (DQFGCPE)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        app.exit(e);
        return 2;
    }

    std::string module = "cli", query = "run";
    try {
        if (compute->parsed() || dynamic->parsed()) {
            query = (compute->parsed() ? "compute" : "dynamic") + std::string(" --dist ") +
                    dist + " --eta " + fmt(eta);
            const auto method = method_from_string(method_text);
            const auto m = models::make_model(dist, parse_params(params_text));
            module = "entropy";
            try {
                json j;
                if (compute->parsed()) {
                    j = entropy_record(m, eta, std::nullopt,
                                       entropy::evaluate_qfgcpe(m, eta, method));
                } else {
                    j = entropy_record(m, eta, v, entropy::evaluate_dqfgcpe(m, eta, v, method));
                }
                emit(out_path, j.dump(2) + "\n");
            } catch (const std::exception&) {
                rethrow_computation(module, query);
            }
        } else if (estimate->parsed()) {
            module = "estimator";
            query = "estimate --input " + input_path + " --eta " + fmt(eta);
            const Sample s = read_sample_file(input_path);
            estimator::EstimateResult r;
            try {
                if (boot_B > 0) {
                    r = estimator::bootstrap_ci(s, eta, boot_level, boot_B, seed);
                } else {
                    r.eta = eta;
                    r.point = estimator::estimate(s, eta);
                }
            } catch (const std::exception&) {
                rethrow_computation(module, query);
            }
            json j;
            j["eta"] = r.eta;
            j["point"] = r.point;
            j["n"] = s.values.size();
            if (r.ci) j["ci"] = {{"lower", r.ci->lower}, {"upper", r.ci->upper},
                                 {"level", r.ci->level}};
            if (r.n_boot) j["n_boot"] = *r.n_boot;
            if (r.seed) j["seed"] = *r.seed;
            emit(out_path, j.dump(2) + "\n");
        } else if (simulate->parsed()) {
            module = "montecarlo";
            query = "simulate --dist " + dist + " --eta " + fmt(eta) + " --n " + n_text;
            montecarlo::Scenario sc{models::make_model(dist, parse_params(params_text)),
                                    eta, parse_int_list(n_text), reps, std::nullopt, seed};
            if (boot_B > 0) sc.bootstrap = montecarlo::BootstrapSpec{boot_B, boot_level};
            montecarlo::SimulationReport report;
            try {
                report = montecarlo::run_scenario(sc);
            } catch (const std::exception&) {
                rethrow_computation(module, query);
            }
            const bool as_json = format == "json";
            emit(out_path, as_json ? montecarlo::report_to_json(report)
                                   : montecarlo::report_to_csv(report));
        } else if (bifurcation->parsed()) {
            module = "chaos";
            query = "chaos bifurcation --c-grid " + c_grid_text;
            const auto c_grid = parse_grid(c_grid_text);
            std::vector<chaos::BifurcationPoint> pts;
            try {
                pts = chaos::bifurcation_points(c_grid, orbit_cfg, keep);
            } catch (const std::exception&) {
                rethrow_computation(module, query);
            }
            std::ostringstream os;
            if (format == "json") {
                json j = json::array();
                for (const auto& p : pts) j.push_back({{"c", p.c}, {"x", p.x}});
                os << j.dump(2) << "\n";
            } else {
                os << "c,x\n";
                for (const auto& p : pts) os << fmt(p.c) << ',' << fmt(p.x) << '\n';
            }
            emit(out_path, os.str());
        } else if (chaos_cmd->parsed()) {
            module = "chaos";
            query = "chaos --c-grid " + c_grid_text + " --eta " + eta_grid_text;
            chaos::SweepSpec spec{parse_grid(c_grid_text), parse_grid(eta_grid_text),
                                  orbit_cfg};
            std::vector<chaos::SweepRow> rows;
            try {
                rows = chaos::entropy_sweep(spec);
            } catch (const std::exception&) {
                rethrow_computation(module, query);
            }
            std::ostringstream os;
            if (format == "json") {
                json j = json::array();
                for (const auto& r : rows)
                    j.push_back({{"c", r.c}, {"eta", r.eta}, {"qfgcpe", r.qfgcpe}});
                os << j.dump(2) << "\n";
            } else {
                os << "c,eta,qfgcpe\n";
                for (const auto& r : rows)
                    os << fmt(r.c) << ',' << fmt(r.eta) << ',' << fmt(r.qfgcpe) << '\n';
            }
            emit(out_path, os.str());
        } else if (orderings_cmd->parsed()) {
            query = "orderings --kind " + kind_text + " --dist-a " + dist + " --dist-b " +
                    dist_b;
            const auto kind = kind_from_string(kind_text);
            const auto mX = models::make_model(dist, parse_params(params_text));
            const auto mY = models::make_model(dist_b, parse_params(params_b_text));
            std::optional<double> maybe_eta;
            if (orderings_cmd->count("--eta") > 0 || kind == orderings::OrderKind::QFGCPE ||
                kind == orderings::OrderKind::DQFGCPE)
                maybe_eta = eta;
            std::vector<double> v_grid;
            if (!v_grid_text.empty()) v_grid = parse_grid(v_grid_text);
            module = "orderings";
            orderings::OrderVerdict verdict;
            try {
                verdict = orderings::check_order(kind, mX, mY, grid, maybe_eta, v_grid);
            } catch (const std::invalid_argument&) {
                throw;
            } catch (const std::exception&) {
                rethrow_computation(module, query);
            }
            json j;
            j["kind"] = kind_text;
            j["relation"] = relation_to_string(verdict.relation);
            j["grid_size"] = verdict.grid_size;
            if (verdict.witness)
                j["witness"] = {{"v", verdict.witness->v}, {"lhs", verdict.witness->lhs},
                                {"rhs", verdict.witness->rhs}};
            emit(out_path, j.dump(2) + "\n");
        } else {
            std::cerr << app.help() << std::flush;
            return 2;
        }
    } catch (const ComputationError& e) {
        std::cerr << "error " << e.what() << "\n";
        return 1;
    } catch (const ConvergenceError& e) {
        std::cerr << "error [" << module << "] " << query << ": " << e.what() << "\n";
        return 1;
    } catch (const DivergenceError& e) {
        std::cerr << "error [" << module << "] " << query << ": " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error [" << module << "] " << query << ": " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace qfgcpe::cli
