#pragma once

#include "qfgcpe/sample.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace qfgcpe::models {

/// Optional closed-form entropy hooks carried by a model. A hook returns
/// nullopt when its analytic preconditions fail for the given query, in
/// which case callers fall back to quadrature.
struct ClosedForms {
    std::function<std::optional<double>(double eta)> qfgcpe;
    std::function<std::optional<double>(double eta, double v)> dqfgcpe;
};

/// A lifetime model given by its quantile function Q and quantile density
/// q = Q'. Construction validates, on a 1000-point grid over
/// [1e-9, 1-1e-9], that q > 0, that Q is nondecreasing, and that the
/// central difference of Q matches q at 101 interior points.
class QuantileModel {
public:
    using Fn = std::function<double(double)>;

    QuantileModel(std::string kind, std::map<std::string, double> params,
                  Fn Q, Fn q,
                  std::optional<std::pair<double, double>> support_hint = std::nullopt,
                  ClosedForms closed = {},
                  double deriv_rel_tol = 1e-4);

    double Q(double v) const { return Q_(v); }
    double q(double v) const { return q_(v); }

    const std::string& name() const { return kind_; }
    const std::map<std::string, double>& params() const { return params_; }
    const std::optional<std::pair<double, double>>& support_hint() const { return support_; }

    std::optional<double> closed_qfgcpe(double eta) const;
    std::optional<double> closed_dqfgcpe(double eta, double v) const;

private:
    std::string kind_;
    std::map<std::string, double> params_;
    Fn Q_, q_;
    std::optional<std::pair<double, double>> support_;
    ClosedForms closed_;
};

// Catalog constructors.
QuantileModel make_uniform(double b);
QuantileModel make_exponential(double lambda);
QuantileModel make_power(double a, double b);
QuantileModel make_half_logistic(double k);
QuantileModel make_frechet(double a, double b);
QuantileModel make_davies(double K, double a, double b);
QuantileModel make_govindarajalu(double alpha, double beta, double gamma);

/// CLI-facing dispatcher. `kind` is one of uniform, exponential, power,
/// half_logistic, frechet, davies, govindarajalu; params are validated
/// with per-field messages (unknown key, missing key, domain violation).
QuantileModel make_model(const std::string& kind,
                         const std::map<std::string, double>& params);

// Transformation combinators.
QuantileModel prhm(const QuantileModel& base, double theta);
QuantileModel affine(const QuantileModel& base, double a, double b);
QuantileModel monotone_map(const QuantileModel& base,
                           const std::function<double(double)>& psi,
                           const std::function<double(double)>& psi_prime);
QuantileModel qsum(const QuantileModel& m1, const QuantileModel& m2);
QuantileModel qproduct(const QuantileModel& m1, const QuantileModel& m2);
QuantileModel reciprocal(const QuantileModel& base);

double hazard_quantile(const QuantileModel& m, double v);
double reversed_hazard_quantile(const QuantileModel& m, double v);

/// n i.i.d. inverse-transform draws Q(U_i), sorted. U_i come from a
/// std::mt19937_64 seeded with `seed`; draws are bit-reproducible for
/// identical (seed, n, model).
Sample sample(const QuantileModel& m, int n, std::uint64_t seed);

/// Deterministic substream derivation (splitmix64 over the mixed words);
/// shared by the sampling, bootstrap and Monte Carlo layers.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0);

} // namespace qfgcpe::models
