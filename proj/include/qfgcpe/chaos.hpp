#pragma once

#include "qfgcpe/sample.hpp"

#include <vector>

namespace qfgcpe::chaos {

struct OrbitConfig {
    double c = 4.0;       // control parameter in [0,4]
    double x0 = 0.1;      // initial value in (0,1)
    int burn_in = 1000;
    int length = 5000;    // >= 2
};

struct SweepSpec {
    std::vector<double> c_grid;
    std::vector<double> eta_grid;
    OrbitConfig orbit; // template; c is overridden per grid point
};

struct SweepRow {
    double c = 0.0;
    double eta = 0.0;
    double qfgcpe = 0.0;
};

struct BifurcationPoint {
    double c = 0.0;
    double x = 0.0;
};

/// Iterates x_{n+1} = c x_n (1 - x_n), discards burn_in iterates and
/// returns the next `length` values sorted into a Sample.
Sample orbit(const OrbitConfig& cfg);

/// QFGCPE estimate of the orbit sample for every (c, eta) cell, in grid
/// order (c outer, eta inner).
std::vector<SweepRow> entropy_sweep(const SweepSpec& spec);

/// Per c, the last `keep` post-burn-in iterates in generation order
/// (plot-ready bifurcation data).
std::vector<BifurcationPoint> bifurcation_points(const std::vector<double>& c_grid,
                                                 const OrbitConfig& tmpl, int keep);

} // namespace qfgcpe::chaos
