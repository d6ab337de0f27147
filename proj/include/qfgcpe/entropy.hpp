#pragma once

#include "qfgcpe/quadrature.hpp"
#include "qfgcpe/quantile_models.hpp"

namespace qfgcpe::entropy {

enum class Method { closed_form, quadrature, auto_select };

struct EntropyResult {
    double value = 0.0;
    Method method_used = Method::quadrature;
    double est_abs_err = 0.0;
};

/// QFGCPE: (1/Gamma(eta+1)) * int_0^1 p (-ln p)^eta q(p) dp.
/// `auto_select` prefers a closed form when the model provides one whose
/// preconditions hold, otherwise falls back to adaptive quadrature with
/// fitted endpoint-tail corrections. eta below 1e-6 is rejected.
EntropyResult evaluate_qfgcpe(const models::QuantileModel& m, double eta,
                              Method method = Method::auto_select,
                              const QuadratureControl& ctl = {});
double qfgcpe(const models::QuantileModel& m, double eta,
              Method method = Method::auto_select, const QuadratureControl& ctl = {});

/// DQFGCPE: (1/(v Gamma(eta+1))) * int_0^v p (ln v - ln p)^eta q(p) dp,
/// v strictly inside (0,1).
EntropyResult evaluate_dqfgcpe(const models::QuantileModel& m, double eta, double v,
                               Method method = Method::auto_select,
                               const QuadratureControl& ctl = {});
double dqfgcpe(const models::QuantileModel& m, double eta, double v,
               Method method = Method::auto_select, const QuadratureControl& ctl = {});

/// Shannon-entropy lower bound exp(-1 - eta*gamma) * exp(xi_Q), where
/// xi_Q = int_0^1 ln q(p) dp is the Shannon entropy in quantile form
/// (Jensen applied to the log of the integrand).
double qfgcpe_lower_bound(const models::QuantileModel& m, double eta,
                          const QuadratureControl& ctl = {});

/// Quantile-based cumulative past entropy int_0^1 p (-ln p) q(p) dp
/// (coincides with QFGCPE at eta = 1 since Gamma(2) = 1).
double qcpe(const models::QuantileModel& m, const QuadratureControl& ctl = {});

/// Quantile Shannon entropy int_0^1 ln q(p) dp (equals the differential
/// entropy of X since f(Q(p)) = 1/q(p)).
double quantile_shannon_entropy(const models::QuantileModel& m,
                                const QuadratureControl& ctl = {});

} // namespace qfgcpe::entropy
