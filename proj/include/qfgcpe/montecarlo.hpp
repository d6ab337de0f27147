#pragma once

#include "qfgcpe/quantile_models.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qfgcpe::montecarlo {

struct BootstrapSpec {
    int B = 500;
    double level = 0.95;
};

struct Scenario {
    models::QuantileModel model;
    double eta = 0.5;
    std::vector<int> n_grid;
    int n_sim = 500;
    std::optional<BootstrapSpec> bootstrap;
    std::uint64_t seed = 42;
};

struct ReportRow {
    int n = 0;
    double mean_empirical = 0.0;
    double bias = 0.0;
    double mse = 0.0;
    double rmse = 0.0;
    double theoretical = 0.0;
    std::optional<double> coverage;
    std::optional<double> mcse;
};

struct SimulationReport {
    std::vector<ReportRow> rows;
    std::uint64_t seed = 0;
    int n_sim = 0;
    std::optional<BootstrapSpec> bootstrap;

    bool operator==(const SimulationReport&) const;
};

/// Runs the bias/MSE/RMSE (and optional bootstrap-coverage) experiment for
/// one (model, eta) scenario across its n-grid. Replication r of size n uses
/// the substream derived from (seed, n, r), so extending n_grid leaves
/// existing rows untouched.
SimulationReport run_scenario(const Scenario& sc);

std::string report_to_csv(const SimulationReport& report);
std::string report_to_json(const SimulationReport& report);
SimulationReport report_from_csv(const std::string& text);
SimulationReport report_from_json(const std::string& text);

} // namespace qfgcpe::montecarlo
