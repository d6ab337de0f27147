#pragma once

namespace qfgcpe::specfun {

struct SeriesControl {
    int max_terms = 1000000;
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
};

/// Gamma function for x > 0. Throws std::domain_error otherwise.
double gamma_fn(double x);

/// Riemann zeta for s > 1, via the eta-function alternating series with
/// Euler-type (Borwein) acceleration; stable near s = 1+.
double riemann_zeta(double s, const SeriesControl& ctl = {});

/// Polylogarithm Li_s(z) = sum_{k>=1} z^k / k^s for s > 0, 0 <= z < 1.
double polylog(double s, double z, const SeriesControl& ctl = {});

/// Lerch transcendent Phi(z, s, a) = sum_{k>=0} z^k / (a+k)^s
/// for 0 <= z < 1, a > 0.
double lerch_phi(double z, double s, double a, const SeriesControl& ctl = {});

/// Tricomi confluent hypergeometric U(A, B, z) for A > 0, z > 0, evaluated
/// through its half-line integral representation.
double tricomi_u(double A, double B, double z);

/// Euler-Mascheroni constant.
double euler_gamma();

} // namespace qfgcpe::specfun
