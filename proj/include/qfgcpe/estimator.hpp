#pragma once

#include "qfgcpe/sample.hpp"

#include <cstdint>
#include <optional>

namespace qfgcpe::estimator {

struct ConfidenceInterval {
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.0;
};

struct EstimateResult {
    double eta = 0.0;
    double point = 0.0;
    std::optional<ConfidenceInterval> ci;
    std::optional<int> n_boot;
    std::optional<std::uint64_t> seed;
};

/// Spacings estimator of QFGCPE from a sorted sample:
///   (1/Gamma(eta+1)) sum_{k=1}^{n-1} (k/n)(-ln(k/n))^eta (X_{k+1:n} - X_{k:n}).
/// Shift-invariant and scale-equivariant by construction.
double estimate(const Sample& sample, double eta);

/// Empirical quantile density n(X_{k:n} - X_{k-1:n}) for
/// v in ((k-1)/n, k/n], k >= 2; the first bucket reuses the first spacing.
double empirical_qdf(const Sample& sample, double v);

/// Percentile bootstrap CI from B resamples with replacement (type-7
/// order-statistic interpolation). Deterministic given seed.
EstimateResult bootstrap_ci(const Sample& sample, double eta, double level, int B,
                            std::uint64_t seed);

} // namespace qfgcpe::estimator
