#include "qfgcpe/special_functions.hpp"

#include "qfgcpe/errors.hpp"
#include "qfgcpe/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfgcpe::specfun {

namespace {

void check_ctl(const SeriesControl& ctl) {
    if (ctl.max_terms < 1 || ctl.abs_tol <= 0.0 || ctl.rel_tol <= 0.0)
        throw std::invalid_argument("SeriesControl: max_terms >= 1 and positive tolerances required");
}

// Sum_{k=N}^{inf} z^k (a+k)^{-s} via Euler-Maclaurin: integral term plus
// the f/2 and -f'/12 corrections. The cubic correction serves as the
// error estimate. Requires 0 < z < 1, s > 0.
double lerch_tail(double z, double s, double a, double N, double abs_tol) {
    const double lam = std::log(z); // < 0
    auto fval = [&](double x) { return std::exp(lam * x) * std::pow(a + x, -s); };

    // int_N^inf e^{lam x}(a+x)^{-s} dx with e^{lam t} = 1-u
    QuadratureControl qc;
    qc.abs_tol = std::min(abs_tol * 1e-2, 1e-12);
    qc.rel_tol = 1e-12;
    auto g = [&](double u) {
        const double t = std::log1p(-u) / lam;
        return std::pow(a + N + t, -s);
    };
    const double integral =
        std::exp(lam * N) / (-lam) * integrate(g, 0.0, 1.0 - 1e-12, qc).value;

    const double fN = fval(N);
    const double w = lam - s / (a + N);
    const double f1 = fN * w;                                     // f'(N)
    const double sp = s / ((a + N) * (a + N));
    const double f3 = fN * (w * w * w + 3.0 * w * sp - 2.0 * sp / (a + N)); // f'''(N)

    const double tail = integral + 0.5 * fN - f1 / 12.0;
    const double err_est = std::abs(f3) / 720.0;
    if (err_est > abs_tol)
        throw ConvergenceError("lerch/polylog series: tail correction above tolerance");
    return tail;
}

// Shared series engine for Lerch (k0 = 0, offset a) and polylog (via a = 1,
// multiplied by z outside).
double lerch_sum(double z, double s, double a, const SeriesControl& ctl) {
    if (z == 0.0) return std::pow(a, -s);
    double sum = 0.0, comp = 0.0; // Kahan
    double zk = 1.0;
    const int direct_cap = std::min(ctl.max_terms, 20000);
    for (int k = 0; k < direct_cap; ++k) {
        const double term = zk * std::pow(a + k, -s);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        zk *= z;
        // remaining tail <= term * z/(1-z) since (a+k)^{-s} decreases
        if (term * z / (1.0 - z) <= ctl.abs_tol) return sum;
    }
    if (direct_cap >= ctl.max_terms)
        throw ConvergenceError("lerch/polylog series: max_terms exhausted");
    return sum + lerch_tail(z, s, a, static_cast<double>(direct_cap), ctl.abs_tol);
}

} // namespace

double gamma_fn(double x) {
    if (!(x > 0.0))
        throw std::domain_error("gamma_fn: requires x > 0 (got " + std::to_string(x) + ")");
    return std::tgamma(x);
}

double riemann_zeta(double s, const SeriesControl& ctl) {
    check_ctl(ctl);
    if (!(s > 1.0))
        throw std::domain_error("riemann_zeta: requires s > 1 (got " + std::to_string(s) + ")");

    // Borwein's accelerated alternating (eta) series:
    //   zeta(s) = -1/(d_n (1 - 2^{1-s})) * sum_{k=0}^{n-1} (-1)^k (d_k - d_n) / (k+1)^s
    // with geometric convergence ~ (3+sqrt(8))^{-n}.
    const double denom = 1.0 - std::pow(2.0, 1.0 - s); // ~ (s-1) ln 2 near s=1
    const double target = ctl.abs_tol * std::abs(denom) / 3.0;
    int n = static_cast<int>(std::ceil(std::log(1.0 / std::max(target, 1e-300)) / 1.7627)) + 2;
    n = std::max(n, 8);
    if (n > ctl.max_terms)
        throw ConvergenceError("riemann_zeta: max_terms too small for requested tolerance");

    std::vector<double> d(n + 1);
    double t = 1.0;
    d[0] = t;
    for (int i = 1; i <= n; ++i) {
        // t_i = t_{i-1} * (n+i-1)(n-i+1) * 4 / ((2i-1)(2i))
        t *= 4.0 * (n + i - 1.0) * (n - i + 1.0) / ((2.0 * i - 1.0) * (2.0 * i));
        d[i] = d[i - 1] + t;
    }
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
        const double term = (d[k] - d[n]) / std::pow(k + 1.0, s);
        acc += (k % 2 == 0) ? term : -term;
    }
    return -acc / (d[n] * denom);
}

double polylog(double s, double z, const SeriesControl& ctl) {
    check_ctl(ctl);
    if (!(s > 0.0))
        throw std::domain_error("polylog: requires s > 0");
    if (!(z >= 0.0 && z < 1.0))
        throw std::domain_error("polylog: requires z in [0,1)");
    if (z == 0.0) return 0.0;
    // Li_s(z) = sum_{k>=1} z^k/k^s = z * sum_{k>=0} z^k/(1+k)^s
    return z * lerch_sum(z, s, 1.0, ctl);
}

double lerch_phi(double z, double s, double a, const SeriesControl& ctl) {
    check_ctl(ctl);
    if (!(a > 0.0))
        throw std::domain_error("lerch_phi: requires a > 0");
    if (!(z >= 0.0 && z < 1.0))
        throw std::domain_error("lerch_phi: requires z in [0,1)");
    return lerch_sum(z, s, a, ctl);
}

double tricomi_u(double A, double B, double z) {
    if (!(A > 0.0) || !(z > 0.0))
        throw std::domain_error("tricomi_u: requires A > 0 and z > 0");

    QuadratureControl qc;
    qc.abs_tol = 1e-13;
    qc.rel_tol = 1e-11;

    // [0,1]: substitute t = u^{1/A} to absorb the t^{A-1} endpoint factor.
    auto f1 = [&](double u) {
        const double tt = std::pow(u, 1.0 / A);
        return std::exp(-z * tt) * std::pow(1.0 + tt, B - A - 1.0) / A;
    };
    const double i1 = integrate(f1, 0.0, 1.0, qc, {1e-6, 1e-3, 0.5}).value;

    // [1,inf): substitute e^{-z(t-1)} = 1-u, flattening the exponential.
    auto f2 = [&](double u) {
        const double tt = 1.0 - std::log1p(-u) / z;
        return std::pow(tt, A - 1.0) * std::pow(1.0 + tt, B - A - 1.0);
    };
    const double i2 =
        std::exp(-z) / z * integrate(f2, 0.0, 1.0 - 1e-13, qc, {0.5, 1.0 - 1e-3, 1.0 - 1e-6}).value;

    return (i1 + i2) / gamma_fn(A);
}

double euler_gamma() {
    return 0.5772156649015328606;
}

} // namespace qfgcpe::specfun
