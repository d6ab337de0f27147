#include "qfgcpe/chaos.hpp"

#include "qfgcpe/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qfgcpe::chaos {

namespace {

void check_cfg(const OrbitConfig& cfg) {
    if (!(cfg.c >= 0.0 && cfg.c <= 4.0))
        throw std::invalid_argument("orbit: c must lie in [0,4]");
    if (!(cfg.x0 > 0.0 && cfg.x0 < 1.0))
        throw std::invalid_argument("orbit: x0 must lie in (0,1)");
    if (cfg.burn_in < 0) throw std::invalid_argument("orbit: burn_in must be >= 0");
    if (cfg.length < 2) throw std::invalid_argument("orbit: length must be >= 2");
}

} // namespace

Sample orbit(const OrbitConfig& cfg) {
    check_cfg(cfg);
    double x = cfg.x0;
    for (int i = 0; i < cfg.burn_in; ++i) x = cfg.c * x * (1.0 - x);
    std::vector<double> xs(cfg.length);
    for (int i = 0; i < cfg.length; ++i) {
        xs[i] = x;
        x = cfg.c * x * (1.0 - x);
    }
    std::sort(xs.begin(), xs.end());
    Sample s;
    s.values = std::move(xs);
    std::ostringstream src;
    src << "logistic(c=" << cfg.c << ",x0=" << cfg.x0 << ",burn=" << cfg.burn_in
        << ",len=" << cfg.length << ")";
    s.source = src.str();
    return s;
}

std::vector<SweepRow> entropy_sweep(const SweepSpec& spec) {
    if (spec.c_grid.empty() || spec.eta_grid.empty())
        throw std::invalid_argument("entropy_sweep: grids must be nonempty");
    for (double eta : spec.eta_grid)
        if (!(eta > 0.0)) throw std::invalid_argument("entropy_sweep: eta must be > 0");

    std::vector<SweepRow> rows;
    rows.reserve(spec.c_grid.size() * spec.eta_grid.size());
    for (double c : spec.c_grid) {
        OrbitConfig cfg = spec.orbit;
        cfg.c = c;
        const Sample s = orbit(cfg);
        for (double eta : spec.eta_grid)
            rows.push_back({c, eta, estimator::estimate(s, eta)});
    }
    return rows;
}

std::vector<BifurcationPoint> bifurcation_points(const std::vector<double>& c_grid,
                                                 const OrbitConfig& tmpl, int keep) {
    if (keep < 1) throw std::invalid_argument("bifurcation_points: keep must be >= 1");
    std::vector<BifurcationPoint> pts;
    pts.reserve(c_grid.size() * keep);
    for (double c : c_grid) {
        OrbitConfig cfg = tmpl;
        cfg.c = c;
        check_cfg(cfg);
        double x = cfg.x0;
        const int total = cfg.burn_in + keep;
        for (int i = 0; i < total; ++i) {
            if (i >= cfg.burn_in) pts.push_back({c, x});
            x = c * x * (1.0 - x);
        }
    }
    return pts;
}

} // namespace qfgcpe::chaos
