#include "qfgcpe/entropy.hpp"

#include "qfgcpe/errors.hpp"
#include "qfgcpe/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qfgcpe::entropy {

namespace {

void check_eta(double eta) {
    if (!(eta >= 1e-6))
        throw std::domain_error("entropy: eta must be >= 1e-6 (got " + std::to_string(eta) + ")");
}

void check_ctl(const QuadratureControl& ctl) {
    if (!(ctl.abs_tol > 0.0) || !(ctl.rel_tol > 0.0) || ctl.max_subdivisions < 1 ||
        !(ctl.endpoint_clip > 0.0 && ctl.endpoint_clip < 1e-3))
        throw std::invalid_argument("QuadratureControl: positive tolerances and clip in (0,1e-3) required");
}

// Tail of int_{1-eps}^1 p (-ln p)^eta q(p) dp from a local power-law fit
// q(1-u) ~ C u^{-beta}. Detects divergence (eta + 1 - beta <= 0).
double upper_tail(const models::QuantileModel& m, double eta, double eps) {
    const double u1 = 1e-8, u2 = 1e-9;
    const double g1 = m.q(1.0 - u1), g2 = m.q(1.0 - u2);
    const double beta = std::log(g2 / g1) / std::log(u1 / u2);
    const double expo = eta + 1.0 - beta;
    if (expo <= 1e-3)
        throw DivergenceError(m.name() + ": QFGCPE integral diverges near v=1 "
                              "(local q ~ (1-v)^-" + std::to_string(beta) +
                              ", eta=" + std::to_string(eta) + ")");
    const double C = g1 * std::pow(u1, beta);
    return C * std::pow(eps, expo) / expo;
}

double weighted_integral(const models::QuantileModel& m, double eta,
                         const QuadratureControl& ctl, double* err_out) {
    const double eps = ctl.endpoint_clip;
    auto f = [&](double p) { return p * std::pow(-std::log(p), eta) * m.q(p); };
    const std::vector<double> seeds{1e-6, 1e-3, 0.5, 1.0 - 1e-3, 1.0 - 1e-6};
    const double tail = upper_tail(m, eta, eps); // also rejects divergent integrals
    QuadResult core = integrate(f, eps, 1.0 - eps, ctl, seeds);
    // the clipped lower end contributes at most ~ eps * f(eps)
    const double lower_bound_est = eps * f(eps);
    if (err_out) *err_out = core.abs_err + std::abs(lower_bound_est);
    return core.value + tail;
}

} // namespace

EntropyResult evaluate_qfgcpe(const models::QuantileModel& m, double eta, Method method,
                              const QuadratureControl& ctl) {
    check_eta(eta);
    check_ctl(ctl);
    if (method == Method::closed_form || method == Method::auto_select) {
        auto cf = m.closed_qfgcpe(eta);
        if (cf) return {*cf, Method::closed_form, 0.0};
        if (method == Method::closed_form) {
            if (m.name() == "frechet")
                throw DivergenceError("frechet: closed-form QFGCPE requires eta > 1/a");
            throw std::invalid_argument(m.name() + ": no closed-form QFGCPE available");
        }
    }
    double err = 0.0;
    const double val = weighted_integral(m, eta, ctl, &err) / specfun::gamma_fn(eta + 1.0);
    return {val, Method::quadrature, err / specfun::gamma_fn(eta + 1.0)};
}

double qfgcpe(const models::QuantileModel& m, double eta, Method method,
              const QuadratureControl& ctl) {
    return evaluate_qfgcpe(m, eta, method, ctl).value;
}

EntropyResult evaluate_dqfgcpe(const models::QuantileModel& m, double eta, double v,
                               Method method, const QuadratureControl& ctl) {
    check_eta(eta);
    check_ctl(ctl);
    if (!(v > 0.0 && v < 1.0))
        throw std::domain_error("dqfgcpe: v must lie strictly in (0,1)");
    if (method == Method::closed_form || method == Method::auto_select) {
        auto cf = m.closed_dqfgcpe(eta, v);
        if (cf) return {*cf, Method::closed_form, 0.0};
        if (method == Method::closed_form)
            throw std::invalid_argument(m.name() + ": no closed-form DQFGCPE available");
    }
    const double lv = std::log(v);
    auto f = [&](double p) { return p * std::pow(lv - std::log(p), eta) * m.q(p); };
    const double lo = ctl.endpoint_clip * v;
    const std::vector<double> seeds{v * 1e-6, v * 1e-3, v * 0.5, v * (1.0 - 1e-3),
                                    v * (1.0 - 1e-6)};
    QuadResult r = integrate(f, lo, v, ctl, seeds);
    const double norm = v * specfun::gamma_fn(eta + 1.0);
    return {r.value / norm, Method::quadrature, r.abs_err / norm};
}

double dqfgcpe(const models::QuantileModel& m, double eta, double v, Method method,
               const QuadratureControl& ctl) {
    return evaluate_dqfgcpe(m, eta, v, method, ctl).value;
}

double quantile_shannon_entropy(const models::QuantileModel& m,
                                const QuadratureControl& ctl) {
    check_ctl(ctl);
    const double eps = ctl.endpoint_clip;
    auto f = [&](double p) { return std::log(m.q(p)); };
    QuadResult r =
        integrate(f, eps, 1.0 - eps, ctl, {1e-6, 1e-3, 0.5, 1.0 - 1e-3, 1.0 - 1e-6});
    if (!std::isfinite(r.value))
        throw DivergenceError(m.name() + ": quantile Shannon entropy diverges");
    return r.value;
}

double qfgcpe_lower_bound(const models::QuantileModel& m, double eta,
                          const QuadratureControl& ctl) {
    check_eta(eta);
    // int_0^1 ln[p(-ln p)^eta] dp = -1 - eta*gamma
    const double xi = quantile_shannon_entropy(m, ctl);
    return std::exp(-1.0 - eta * specfun::euler_gamma()) * std::exp(xi);
}

double qcpe(const models::QuantileModel& m, const QuadratureControl& ctl) {
    check_ctl(ctl);
    auto cf = m.closed_qfgcpe(1.0); // Gamma(2) = 1
    if (cf) return *cf;
    double err = 0.0;
    return weighted_integral(m, 1.0, ctl, &err);
}

} // namespace qfgcpe::entropy
