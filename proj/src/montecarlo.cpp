#include "qfgcpe/montecarlo.hpp"

#include "qfgcpe/entropy.hpp"
#include "qfgcpe/estimator.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qfgcpe::montecarlo {

namespace {

using nlohmann::json;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

double kahan_mean(const std::vector<double>& xs) {
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum / xs.size();
}

} // namespace

bool SimulationReport::operator==(const SimulationReport& o) const {
    if (seed != o.seed || n_sim != o.n_sim || rows.size() != o.rows.size()) return false;
    if (bootstrap.has_value() != o.bootstrap.has_value()) return false;
    if (bootstrap && (bootstrap->B != o.bootstrap->B || bootstrap->level != o.bootstrap->level))
        return false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& a = rows[i];
        const auto& b = o.rows[i];
        if (a.n != b.n || a.mean_empirical != b.mean_empirical || a.bias != b.bias ||
            a.mse != b.mse || a.rmse != b.rmse || a.theoretical != b.theoretical ||
            a.coverage != b.coverage || a.mcse != b.mcse)
            return false;
    }
    return true;
}

SimulationReport run_scenario(const Scenario& sc) {
    if (sc.n_sim < 1) throw std::invalid_argument("run_scenario: n_sim >= 1 required");
    if (sc.n_grid.empty()) throw std::invalid_argument("run_scenario: n_grid must be nonempty");
    for (int n : sc.n_grid)
        if (n < 2) throw std::invalid_argument("run_scenario: each n must be >= 2");

    const double theoretical = entropy::qfgcpe(sc.model, sc.eta);

    SimulationReport report;
    report.seed = sc.seed;
    report.n_sim = sc.n_sim;
    report.bootstrap = sc.bootstrap;

    for (int n : sc.n_grid) {
        std::vector<double> estimates(sc.n_sim);
        std::vector<double> sq_errors(sc.n_sim);
        int covered = 0;
        for (int r = 0; r < sc.n_sim; ++r) {
            const std::uint64_t sub = models::derive_seed(
                sc.seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r));
            Sample s = models::sample(sc.model, n, sub);
            estimates[r] = estimator::estimate(s, sc.eta);
            const double e = estimates[r] - theoretical;
            sq_errors[r] = e * e;
            if (sc.bootstrap) {
                const std::uint64_t bseed = models::derive_seed(
                    sc.seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r),
                    0xB007ULL);
                auto res = estimator::bootstrap_ci(s, sc.eta, sc.bootstrap->level,
                                                   sc.bootstrap->B, bseed);
                if (res.ci->lower <= theoretical && theoretical <= res.ci->upper) ++covered;
            }
        }
        ReportRow row;
        row.n = n;
        row.mean_empirical = kahan_mean(estimates);
        row.bias = row.mean_empirical - theoretical;
        row.mse = kahan_mean(sq_errors);
        row.rmse = std::sqrt(row.mse);
        row.theoretical = theoretical;
        if (sc.bootstrap) {
            const double p = static_cast<double>(covered) / sc.n_sim;
            row.coverage = p;
            row.mcse = std::sqrt(p * (1.0 - p) / sc.n_sim);
        }
        report.rows.push_back(row);
    }
    return report;
}

std::string report_to_csv(const SimulationReport& report) {
    std::ostringstream os;
    os << "n,mean_empirical,bias,mse,rmse,theoretical,coverage,mcse\n";
    for (const auto& r : report.rows) {
        os << r.n << ',' << fmt(r.mean_empirical) << ',' << fmt(r.bias) << ',' << fmt(r.mse)
           << ',' << fmt(r.rmse) << ',' << fmt(r.theoretical) << ','
           << (r.coverage ? fmt(*r.coverage) : "") << ',' << (r.mcse ? fmt(*r.mcse) : "")
           << '\n';
    }
    os << "# seed=" << report.seed << " n_sim=" << report.n_sim;
    if (report.bootstrap)
        os << " B=" << report.bootstrap->B << " level=" << fmt(report.bootstrap->level);
    os << '\n';
    return os.str();
}

SimulationReport report_from_csv(const std::string& text) {
    SimulationReport report;
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != "n,mean_empirical,bias,mse,rmse,theoretical,coverage,mcse")
        throw std::invalid_argument("report_from_csv: bad header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ps(line.substr(1));
            std::string tok;
            while (ps >> tok) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = tok.substr(0, eq);
                const std::string val = tok.substr(eq + 1);
                if (key == "seed") report.seed = std::stoull(val);
                else if (key == "n_sim") report.n_sim = std::stoi(val);
                else if (key == "B") {
                    if (!report.bootstrap) report.bootstrap = BootstrapSpec{};
                    report.bootstrap->B = std::stoi(val);
                } else if (key == "level") {
                    if (!report.bootstrap) report.bootstrap = BootstrapSpec{};
                    report.bootstrap->level = std::stod(val);
                }
            }
            continue;
        }
        std::istringstream ls(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        while (cells.size() < 8) cells.push_back("");
        ReportRow row;
        row.n = std::stoi(cells[0]);
        row.mean_empirical = std::stod(cells[1]);
        row.bias = std::stod(cells[2]);
        row.mse = std::stod(cells[3]);
        row.rmse = std::stod(cells[4]);
        row.theoretical = std::stod(cells[5]);
        if (!cells[6].empty()) row.coverage = std::stod(cells[6]);
        if (!cells[7].empty()) row.mcse = std::stod(cells[7]);
        report.rows.push_back(row);
    }
    return report;
}

std::string report_to_json(const SimulationReport& report) {
    json j;
    j["seed"] = report.seed;
    j["n_sim"] = report.n_sim;
    if (report.bootstrap)
        j["bootstrap"] = {{"B", report.bootstrap->B}, {"level", report.bootstrap->level}};
    j["rows"] = json::array();
    for (const auto& r : report.rows) {
        json row = {{"n", r.n},
                    {"mean_empirical", r.mean_empirical},
                    {"bias", r.bias},
                    {"mse", r.mse},
                    {"rmse", r.rmse},
                    {"theoretical", r.theoretical}};
        if (r.coverage) row["coverage"] = *r.coverage;
        if (r.mcse) row["mcse"] = *r.mcse;
        j["rows"].push_back(row);
    }
    return j.dump(2) + "\n";
}

SimulationReport report_from_json(const std::string& text) {
    const json j = json::parse(text);
    SimulationReport report;
    report.seed = j.at("seed").get<std::uint64_t>();
    report.n_sim = j.at("n_sim").get<int>();
    if (j.contains("bootstrap"))
        report.bootstrap = BootstrapSpec{j["bootstrap"].at("B").get<int>(),
                                         j["bootstrap"].at("level").get<double>()};
    for (const auto& row : j.at("rows")) {
        ReportRow r;
        r.n = row.at("n").get<int>();
        r.mean_empirical = row.at("mean_empirical").get<double>();
        r.bias = row.at("bias").get<double>();
        r.mse = row.at("mse").get<double>();
        r.rmse = row.at("rmse").get<double>();
        r.theoretical = row.at("theoretical").get<double>();
        if (row.contains("coverage")) r.coverage = row["coverage"].get<double>();
        if (row.contains("mcse")) r.mcse = row["mcse"].get<double>();
        report.rows.push_back(r);
    }
    return report;
}

} // namespace qfgcpe::montecarlo
