#include "qfgcpe/estimator.hpp"

#include "qfgcpe/quantile_models.hpp"
#include "qfgcpe/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace qfgcpe::estimator {

namespace {

void check_sample(const Sample& s) {
    if (s.values.size() < 2)
        throw std::invalid_argument("estimator: sample must contain at least 2 values");
    double prev = -std::numeric_limits<double>::infinity();
    for (double x : s.values) {
        if (!std::isfinite(x))
            throw std::invalid_argument("estimator: sample contains non-finite values");
        if (x < prev) throw std::invalid_argument("estimator: sample must be sorted");
        prev = x;
    }
}

double quantile_type7(const std::vector<double>& sorted, double p) {
    const double h = (sorted.size() - 1) * p;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + (h - lo) * (sorted[lo + 1] - sorted[lo]);
}

} // namespace

double estimate(const Sample& sample, double eta) {
    check_sample(sample);
    if (!(eta > 0.0)) throw std::invalid_argument("estimator: eta must be > 0");
    const std::size_t n = sample.values.size();
    double sum = 0.0, comp = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double p = static_cast<double>(k) / n;
        const double term =
            p * std::pow(-std::log(p), eta) * (sample.values[k] - sample.values[k - 1]);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum / specfun::gamma_fn(eta + 1.0);
}

double empirical_qdf(const Sample& sample, double v) {
    check_sample(sample);
    if (!(v > 0.0 && v < 1.0))
        throw std::domain_error("empirical_qdf: v must lie in (0,1)");
    const std::size_t n = sample.values.size();
    std::size_t k = static_cast<std::size_t>(std::ceil(v * n));
    if (k < 2) k = 2; // boundary convention: the first bucket reuses spacing X_2 - X_1
    if (k > n) k = n;
    return n * (sample.values[k - 1] - sample.values[k - 2]);
}

EstimateResult bootstrap_ci(const Sample& sample, double eta, double level, int B,
                            std::uint64_t seed) {
    check_sample(sample);
    if (B < 2) throw std::invalid_argument("bootstrap_ci: requires B >= 2");
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("bootstrap_ci: level must lie in (0,1)");

    const std::size_t n = sample.values.size();
    std::vector<double> estimates(B);
    std::vector<double> resample(n);
    for (int r = 0; r < B; ++r) {
        // replicate r uses its own substream so results are order-independent
        std::mt19937_64 eng(models::derive_seed(seed, static_cast<std::uint64_t>(r)));
        for (std::size_t i = 0; i < n; ++i)
            resample[i] = sample.values[eng() % n];
        std::sort(resample.begin(), resample.end());
        Sample rs;
        rs.values = resample;
        rs.source = "bootstrap";
        estimates[r] = estimate(rs, eta);
    }
    std::sort(estimates.begin(), estimates.end());

    const double alpha = 1.0 - level;
    EstimateResult out;
    out.eta = eta;
    out.point = estimate(sample, eta);
    out.ci = ConfidenceInterval{quantile_type7(estimates, alpha / 2.0),
                                quantile_type7(estimates, 1.0 - alpha / 2.0), level};
    out.n_boot = B;
    out.seed = seed;
    return out;
}

} // namespace qfgcpe::estimator
