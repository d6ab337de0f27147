#include "qfgcpe/quantile_models.hpp"

#include "qfgcpe/errors.hpp"
#include "qfgcpe/quadrature.hpp"
#include "qfgcpe/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qfgcpe::models {

namespace {

constexpr int kGridPoints = 1000;
constexpr double kGridLo = 1e-9;
constexpr double kGridHi = 1.0 - 1e-9;

double grid_point(int i, int n) {
    return kGridLo + (kGridHi - kGridLo) * i / (n - 1);
}

[[noreturn]] void param_domain_error(const std::string& kind, const std::string& what) {
    throw std::invalid_argument(kind + ": " + what);
}

std::string format_params(const std::map<std::string, double>& params) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : params) {
        if (!first) os << ",";
        os << k << "=" << v;
        first = false;
    }
    return os.str();
}

} // namespace

QuantileModel::QuantileModel(std::string kind, std::map<std::string, double> params,
                             Fn Q, Fn q,
                             std::optional<std::pair<double, double>> support_hint,
                             ClosedForms closed, double deriv_rel_tol)
    : kind_(std::move(kind)),
      params_(std::move(params)),
      Q_(std::move(Q)),
      q_(std::move(q)),
      support_(support_hint),
      closed_(std::move(closed)) {
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGridPoints; ++i) {
        const double v = grid_point(i, kGridPoints);
        const double qv = q_(v);
        if (!(qv > 0.0) || !std::isfinite(qv))
            throw std::invalid_argument(kind_ + ": quantile density must be positive on (0,1); q(" +
                                        std::to_string(v) + ") = " + std::to_string(qv));
        const double Qv = Q_(v);
        if (!std::isfinite(Qv) || Qv < prev)
            throw std::invalid_argument(kind_ + ": quantile function must be nondecreasing");
        prev = Qv;
    }
    // derivative consistency at 101 interior points
    const double h = 1e-6;
    for (int i = 1; i <= 101; ++i) {
        const double v = i / 102.0;
        const double num = (Q_(v + h) - Q_(v - h)) / (2.0 * h);
        const double qv = q_(v);
        if (std::abs(num - qv) > deriv_rel_tol * std::abs(qv))
            throw std::invalid_argument(kind_ + ": q(v) inconsistent with dQ/dv at v=" +
                                        std::to_string(v) + " (numeric " + std::to_string(num) +
                                        " vs analytic " + std::to_string(qv) + ")");
    }
}

std::optional<double> QuantileModel::closed_qfgcpe(double eta) const {
    if (!closed_.qfgcpe) return std::nullopt;
    return closed_.qfgcpe(eta);
}

std::optional<double> QuantileModel::closed_dqfgcpe(double eta, double v) const {
    if (!closed_.dqfgcpe) return std::nullopt;
    return closed_.dqfgcpe(eta, v);
}

QuantileModel make_uniform(double b) {
    if (!(b > 0.0)) param_domain_error("uniform", "requires b > 0");
    ClosedForms cf;
    cf.qfgcpe = [b](double eta) -> std::optional<double> {
        return b / std::pow(2.0, eta + 1.0);
    };
    return QuantileModel("uniform", {{"b", b}},
                         [b](double v) { return b * v; },
                         [b](double) { return b; },
                         std::make_pair(0.0, b), cf);
}

QuantileModel make_exponential(double lambda) {
    if (!(lambda > 0.0)) param_domain_error("exponential", "requires lambda > 0");
    ClosedForms cf;
    cf.qfgcpe = [lambda](double eta) -> std::optional<double> {
        return (specfun::riemann_zeta(eta + 1.0) - 1.0) / lambda;
    };
    cf.dqfgcpe = [lambda](double eta, double v) -> std::optional<double> {
        return (specfun::polylog(eta + 1.0, v) - v) / (lambda * v);
    };
    return QuantileModel("exponential", {{"lambda", lambda}},
                         [lambda](double v) { return -std::log1p(-v) / lambda; },
                         [lambda](double v) { return 1.0 / (lambda * (1.0 - v)); },
                         std::make_pair(0.0, std::numeric_limits<double>::infinity()), cf);
}

QuantileModel make_power(double a, double b) {
    if (!(a > 0.0)) param_domain_error("power", "requires a > 0");
    if (!(b > 0.0)) param_domain_error("power", "requires b > 0");
    ClosedForms cf;
    cf.qfgcpe = [a, b](double eta) -> std::optional<double> {
        return a * std::pow(b, eta) / std::pow(b + 1.0, eta + 1.0);
    };
    return QuantileModel("power", {{"a", a}, {"b", b}},
                         [a, b](double v) { return a * std::pow(v, 1.0 / b); },
                         [a, b](double v) { return a / b * std::pow(v, 1.0 / b - 1.0); },
                         std::make_pair(0.0, a), cf);
}

QuantileModel make_half_logistic(double k) {
    // the k = 0 boundary gives q identically zero and is rejected
    if (!(k > 0.0)) param_domain_error("half_logistic", "requires k > 0");
    ClosedForms cf;
    cf.qfgcpe = [k](double eta) -> std::optional<double> {
        return std::pow(2.0, -eta) * k * specfun::riemann_zeta(eta + 1.0);
    };
    return QuantileModel("half_logistic", {{"k", k}},
                         [k](double v) { return k * std::log((1.0 + v) / (1.0 - v)); },
                         [k](double v) { return 2.0 * k / (1.0 - v * v); },
                         std::make_pair(0.0, std::numeric_limits<double>::infinity()), cf);
}

QuantileModel make_frechet(double a, double b) {
    if (!(a > 0.0)) param_domain_error("frechet", "requires a > 0");
    if (!(b > 0.0)) param_domain_error("frechet", "requires b > 0");
    ClosedForms cf;
    cf.qfgcpe = [a, b](double eta) -> std::optional<double> {
        if (eta <= 1.0 / a) return std::nullopt; // Gamma(eta - 1/a) pole / divergence
        return std::pow(b, 1.0 / a) * specfun::gamma_fn(eta - 1.0 / a) /
               (a * specfun::gamma_fn(eta + 1.0));
    };
    cf.dqfgcpe = [a, b](double eta, double v) -> std::optional<double> {
        const double m = -std::log(v);
        return std::pow(b, 1.0 / a) / a * std::pow(m, eta - 1.0 / a) *
               specfun::tricomi_u(eta + 1.0, eta + 1.0 - 1.0 / a, m);
    };
    return QuantileModel("frechet", {{"a", a}, {"b", b}},
                         [a, b](double v) { return std::pow(-b / std::log(v), 1.0 / a); },
                         [a, b](double v) {
                             return std::pow(b, 1.0 / a) / (a * v) *
                                    std::pow(-std::log(v), -(1.0 + 1.0 / a));
                         },
                         std::make_pair(0.0, std::numeric_limits<double>::infinity()), cf);
}

QuantileModel make_davies(double K, double a, double b) {
    if (!(K > 0.0)) param_domain_error("davies", "requires K > 0 (q must be positive)");
    if (!(b > -1.0)) param_domain_error("davies", "requires b > -1");
    auto qd = [K, a, b](double v) {
        return K * std::pow(v, b) * std::pow(1.0 - v, -(a + b));
    };
    // The family is given by q alone; Q is anchored at Q(1e-12) = 0 and obtained
    // by cumulative quadrature (the anchor is immaterial to the entropies,
    // which are shift-independent).
    const double v0 = 1e-12;
    auto Qd = [qd, v0](double v) {
        if (v <= v0) return 0.0;
        QuadratureControl qc;
        qc.abs_tol = 1e-12;
        qc.rel_tol = 1e-12;
        return integrate(qd, v0, v, qc, {1e-6, 1e-3, 0.5, 1.0 - 1e-3, 1.0 - 1e-6}).value;
    };
    ClosedForms cf;
    const double s = a + b;
    if (std::abs(s) < 1e-12) {
        cf.qfgcpe = [K, b](double eta) -> std::optional<double> {
            return K / std::pow(b + 2.0, eta + 1.0);
        };
    } else if (std::abs(s + 1.0) < 1e-12) {
        cf.qfgcpe = [K, b](double eta) -> std::optional<double> {
            return K * (1.0 / std::pow(b + 2.0, eta + 1.0) - 1.0 / std::pow(b + 3.0, eta + 1.0));
        };
    } else if (std::abs(s - 1.0) < 1e-12 && b >= 0.0 && std::abs(b - std::round(b)) < 1e-12) {
        // the a+b = 1 series closes only for nonnegative integer b
        const int bi = static_cast<int>(std::round(b));
        cf.qfgcpe = [K, bi](double eta) -> std::optional<double> {
            double head = 0.0;
            for (int m = 1; m <= bi + 1; ++m) head += std::pow(m, -(eta + 1.0));
            return K * (specfun::riemann_zeta(eta + 1.0) - head);
        };
    }
    return QuantileModel("davies", {{"K", K}, {"a", a}, {"b", b}}, Qd, qd, std::nullopt, cf,
                         1e-3);
}

QuantileModel make_govindarajalu(double alpha, double beta, double gamma) {
    if (!(beta > 0.0)) param_domain_error("govindarajalu", "requires beta > 0");
    if (!(gamma > 0.0)) param_domain_error("govindarajalu", "requires gamma > 0");
    return QuantileModel(
        "govindarajalu", {{"alpha", alpha}, {"beta", beta}, {"gamma", gamma}},
        [alpha, beta, gamma](double v) {
            return alpha + beta * ((gamma + 1.0) * std::pow(v, gamma) -
                                   gamma * std::pow(v, gamma + 1.0));
        },
        [beta, gamma](double v) {
            return beta * gamma * (gamma + 1.0) * std::pow(v, gamma - 1.0) * (1.0 - v);
        },
        std::make_pair(alpha, alpha + beta));
}

QuantileModel make_model(const std::string& kind,
                         const std::map<std::string, double>& params) {
    struct Spec {
        std::vector<std::string> keys;
        std::function<QuantileModel(const std::map<std::string, double>&)> build;
    };
    static const std::map<std::string, Spec> registry = {
        {"uniform", {{"b"}, [](const auto& p) { return make_uniform(p.at("b")); }}},
        {"exponential",
         {{"lambda"}, [](const auto& p) { return make_exponential(p.at("lambda")); }}},
        {"power", {{"a", "b"}, [](const auto& p) { return make_power(p.at("a"), p.at("b")); }}},
        {"half_logistic",
         {{"k"}, [](const auto& p) { return make_half_logistic(p.at("k")); }}},
        {"frechet",
         {{"a", "b"}, [](const auto& p) { return make_frechet(p.at("a"), p.at("b")); }}},
        {"davies",
         {{"K", "a", "b"},
          [](const auto& p) { return make_davies(p.at("K"), p.at("a"), p.at("b")); }}},
        {"govindarajalu",
         {{"alpha", "beta", "gamma"},
          [](const auto& p) {
              return make_govindarajalu(p.at("alpha"), p.at("beta"), p.at("gamma"));
          }}},
    };
    auto it = registry.find(kind);
    if (it == registry.end())
        throw std::invalid_argument("unknown distribution kind '" + kind + "'");
    const auto& spec = it->second;
    for (const auto& key : spec.keys)
        if (!params.count(key))
            throw std::invalid_argument(kind + ": missing required parameter '" + key + "'");
    for (const auto& [key, val] : params) {
        (void)val;
        if (std::find(spec.keys.begin(), spec.keys.end(), key) == spec.keys.end())
            throw std::invalid_argument(kind + ": unknown parameter '" + key + "'");
    }
    return spec.build(params);
}

QuantileModel prhm(const QuantileModel& base, double theta) {
    if (!(theta > 0.0)) throw std::invalid_argument("prhm: requires theta > 0");
    auto Qb = [&base](double v) { return base.Q(v); };
    auto qb = [&base](double v) { return base.q(v); };
    ClosedForms cf;
    if (base.name() == "power") {
        // PRHM of power(a, b) is power(a, b*theta)
        const double a = base.params().at("a");
        const double bt = base.params().at("b") * theta;
        cf.qfgcpe = [a, bt](double eta) -> std::optional<double> {
            return a * std::pow(bt, eta) / std::pow(1.0 + bt, eta + 1.0);
        };
    }
    QuantileModel b = base; // keep the base alive inside the closures
    return QuantileModel(
        base.name() + "_prhm", [&] {
            auto p = base.params();
            p["theta"] = theta;
            return p;
        }(),
        [b, theta](double v) { return b.Q(std::pow(v, 1.0 / theta)); },
        [b, theta](double v) {
            const double w = std::pow(v, 1.0 / theta);
            return b.q(w) * w / (theta * v);
        },
        base.support_hint(), cf);
}

QuantileModel affine(const QuantileModel& base, double a, double b) {
    if (!(a > 0.0)) throw std::invalid_argument("affine: requires a > 0");
    if (!(b >= 0.0)) throw std::invalid_argument("affine: requires b >= 0");
    QuantileModel m = base;
    ClosedForms cf;
    cf.qfgcpe = [m, a](double eta) -> std::optional<double> {
        auto v = m.closed_qfgcpe(eta);
        if (!v) return std::nullopt;
        return a * *v; // scale-equivariant, shift-independent
    };
    cf.dqfgcpe = [m, a](double eta, double v) -> std::optional<double> {
        auto d = m.closed_dqfgcpe(eta, v);
        if (!d) return std::nullopt;
        return a * *d;
    };
    std::optional<std::pair<double, double>> sup;
    if (base.support_hint())
        sup = std::make_pair(a * base.support_hint()->first + b,
                             a * base.support_hint()->second + b);
    return QuantileModel(base.name() + "_affine", [&] {
        auto p = base.params();
        p["scale"] = a;
        p["shift"] = b;
        return p;
    }(),
                         [m, a, b](double v) { return a * m.Q(v) + b; },
                         [m, a](double v) { return a * m.q(v); }, sup, cf);
}

QuantileModel monotone_map(const QuantileModel& base,
                           const std::function<double(double)>& psi,
                           const std::function<double(double)>& psi_prime) {
    QuantileModel m = base;
    // Q_Y = psi(Q_X), q_Y = q_X * psi'(Q_X); positivity of psi' on the grid
    // is enforced by the QuantileModel constructor (q_Y must be > 0).
    return QuantileModel(base.name() + "_mapped", base.params(),
                         [m, psi](double v) { return psi(m.Q(v)); },
                         [m, psi_prime](double v) { return m.q(v) * psi_prime(m.Q(v)); });
}

QuantileModel qsum(const QuantileModel& m1, const QuantileModel& m2) {
    QuantileModel a = m1, b = m2;
    ClosedForms cf;
    cf.qfgcpe = [a, b](double eta) -> std::optional<double> {
        auto x = a.closed_qfgcpe(eta);
        auto y = b.closed_qfgcpe(eta);
        if (!x || !y) return std::nullopt;
        return *x + *y;
    };
    return QuantileModel(m1.name() + "+" + m2.name(), {},
                         [a, b](double v) { return a.Q(v) + b.Q(v); },
                         [a, b](double v) { return a.q(v) + b.q(v); }, std::nullopt, cf);
}

QuantileModel qproduct(const QuantileModel& m1, const QuantileModel& m2) {
    for (int i = 0; i < kGridPoints; ++i) {
        const double v = grid_point(i, kGridPoints);
        if (!(m1.Q(v) > 0.0) || !(m2.Q(v) > 0.0))
            throw std::invalid_argument("qproduct: both quantile functions must be positive");
    }
    QuantileModel a = m1, b = m2;
    return QuantileModel(m1.name() + "*" + m2.name(), {},
                         [a, b](double v) { return a.Q(v) * b.Q(v); },
                         [a, b](double v) {
                             return b.Q(v) * a.q(v) + a.Q(v) * b.q(v);
                         });
}

QuantileModel reciprocal(const QuantileModel& base) {
    for (int i = 0; i < kGridPoints; ++i) {
        const double v = grid_point(i, kGridPoints);
        if (!(base.Q(v) > 0.0))
            throw std::invalid_argument("reciprocal: Q must be strictly positive on (0,1)");
    }
    QuantileModel m = base;
    return QuantileModel(base.name() + "_reciprocal", base.params(),
                         [m](double v) { return 1.0 / m.Q(1.0 - v); },
                         [m](double v) {
                             const double Qv = m.Q(1.0 - v);
                             return m.q(1.0 - v) / (Qv * Qv);
                         });
}

double hazard_quantile(const QuantileModel& m, double v) {
    if (!(v > 0.0 && v < 1.0))
        throw std::domain_error("hazard_quantile: v must lie in (0,1)");
    return 1.0 / ((1.0 - v) * m.q(v));
}

double reversed_hazard_quantile(const QuantileModel& m, double v) {
    if (!(v > 0.0 && v < 1.0))
        throw std::domain_error("reversed_hazard_quantile: v must lie in (0,1)");
    return 1.0 / (v * m.q(v));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c) {
    auto splitmix = [](std::uint64_t& x) {
        x += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::uint64_t state = seed;
    std::uint64_t h = splitmix(state);
    state ^= a + 0x9e3779b97f4a7c15ULL;
    h ^= splitmix(state);
    state ^= b + 0xbf58476d1ce4e5b9ULL;
    h ^= splitmix(state);
    state ^= c + 0x94d049bb133111ebULL;
    h ^= splitmix(state);
    return h;
}

Sample sample(const QuantileModel& m, int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample: requires n >= 1");
    std::mt19937_64 eng(seed);
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) {
        // 53-bit uniform in [2^-53, 1 - 2^-53]
        std::uint64_t bits = eng() >> 11;
        if (bits == 0) bits = 1;
        const double u = static_cast<double>(bits) * 0x1p-53;
        xs[i] = m.Q(u);
    }
    std::sort(xs.begin(), xs.end());
    Sample s;
    s.values = std::move(xs);
    s.source = m.name() + "(" + format_params(m.params()) + ") seed=" + std::to_string(seed) +
               " n=" + std::to_string(n);
    return s;
}

} // namespace qfgcpe::models
