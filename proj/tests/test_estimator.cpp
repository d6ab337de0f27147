#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qfgcpe/entropy.hpp"
#include "qfgcpe/estimator.hpp"
#include "qfgcpe/quantile_models.hpp"

#include <cmath>
#include <stdexcept>

using namespace qfgcpe;
using namespace qfgcpe::estimator;

namespace {

Sample make_sorted(std::vector<double> values) {
    Sample s;
    s.values = std::move(values);
    s.source = "test";
    return s;
}

// deterministic quasi-sample {Q((k - 1/2)/n)}
Sample quasi_sample(const models::QuantileModel& m, int n) {
    Sample s;
    s.values.reserve(n);
    for (int k = 1; k <= n; ++k) s.values.push_back(m.Q((k - 0.5) / n));
    s.source = "quasi";
    return s;
}

} // namespace

TEST_CASE("hand-evaluated cases") {
    CHECK(estimate(make_sorted({3.0, 3.0, 3.0, 3.0}), 0.7) == doctest::Approx(0.0));
    // single term: (1/2)(ln 2) * 1
    CHECK(estimate(make_sorted({0.0, 1.0}), 1.0) ==
          doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(estimate(make_sorted({1.0}), 0.5), std::invalid_argument);
    CHECK_THROWS_AS(estimate(make_sorted({2.0, 1.0}), 0.5), std::invalid_argument);
    CHECK_THROWS_AS(estimate(make_sorted({0.0, std::nan("")}), 0.5), std::invalid_argument);
    CHECK_THROWS_AS(estimate(make_sorted({0.0, 1.0}), 0.0), std::invalid_argument);
}

TEST_CASE("shift invariance and scale equivariance") {
    const auto s = models::sample(models::make_exponential(1.0), 200, 11);
    const double base = estimate(s, 0.5);
    Sample shifted = s;
    for (double& x : shifted.values) x += 3.25;
    CHECK(estimate(shifted, 0.5) == doctest::Approx(base).epsilon(1e-12));
    Sample scaled = s;
    for (double& x : scaled.values) x *= 4.5;
    CHECK(std::abs(estimate(scaled, 0.5) - 4.5 * base) <= 1e-12 * std::abs(base) * 4.5);
}

TEST_CASE("empirical quantile density") {
    const auto s = make_sorted({1.0, 2.0, 3.0});
    CHECK(empirical_qdf(s, 0.5) == doctest::Approx(3.0));
    CHECK(empirical_qdf(s, 0.9) == doctest::Approx(3.0)); // k=3 bucket
    CHECK(empirical_qdf(s, 0.1) == doctest::Approx(3.0)); // boundary reuses X2-X1
    CHECK(empirical_qdf(make_sorted({5.0, 5.0, 5.0}), 0.4) == doctest::Approx(0.0));
    // uniform grid sample has qdf close to 1 everywhere
    const int n = 100;
    std::vector<double> grid(n);
    for (int k = 1; k <= n; ++k) grid[k - 1] = static_cast<double>(k) / n;
    const auto g = make_sorted(std::move(grid));
    for (double v : {0.1, 0.35, 0.8})
        CHECK(empirical_qdf(g, v) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(empirical_qdf(s, 0.0), std::domain_error);
    CHECK_THROWS_AS(empirical_qdf(s, 1.0), std::domain_error);
}

TEST_CASE("quasi-sample convergence rate") {
    for (const auto& m : {models::make_uniform(1.0), models::make_exponential(1.0)}) {
        const double truth = entropy::qfgcpe(m, 1.0);
        std::vector<double> ns{100, 1000, 10000};
        std::vector<double> errs;
        for (double n : ns)
            errs.push_back(std::abs(estimate(quasi_sample(m, static_cast<int>(n)), 1.0) - truth));
        const double slope = (std::log(errs.back()) - std::log(errs.front())) /
                             (std::log(ns.back()) - std::log(ns.front()));
        CHECK(slope <= -0.8);
    }
}

TEST_CASE("consistency trend for the exponential model") {
    const auto m = models::make_exponential(1.0);
    const double truth = entropy::qfgcpe(m, 0.75);
    const int n_sim = 100;
    double prev_mse = std::numeric_limits<double>::infinity();
    double bias50 = 0.0, bias5000 = 0.0;
    for (int n : {50, 100, 500, 1000, 5000}) {
        double mse = 0.0, bias = 0.0;
        for (int r = 0; r < n_sim; ++r) {
            const auto s = models::sample(m, n, models::derive_seed(42, n, r));
            const double e = estimate(s, 0.75) - truth;
            bias += e / n_sim;
            mse += e * e / n_sim;
        }
        if (n == 50) bias50 = bias;
        if (n == 5000) bias5000 = bias;
        CHECK(mse < prev_mse);
        prev_mse = mse;
    }
    CHECK(std::abs(bias5000) < std::abs(bias50));
}

TEST_CASE("bootstrap on a constant sample") {
    const auto r = bootstrap_ci(make_sorted({2.0, 2.0, 2.0, 2.0}), 0.5, 0.95, 50, 1);
    CHECK(r.point == doctest::Approx(0.0));
    REQUIRE(r.ci.has_value());
    CHECK(r.ci->lower == doctest::Approx(0.0));
    CHECK(r.ci->upper == doctest::Approx(0.0));
}

TEST_CASE("bootstrap determinism and CI shape") {
    const auto s = models::sample(models::make_exponential(1.0), 150, 5);
    const auto a = bootstrap_ci(s, 0.5, 0.9, 200, 42);
    const auto b = bootstrap_ci(s, 0.5, 0.9, 200, 42);
    REQUIRE(a.ci.has_value());
    CHECK(a.ci->lower == b.ci->lower);
    CHECK(a.ci->upper == b.ci->upper);
    CHECK(a.ci->lower <= a.ci->upper);
    CHECK(a.ci->level == doctest::Approx(0.9));
    CHECK(*a.n_boot == 200);
    CHECK(*a.seed == 42);
    const auto c = bootstrap_ci(s, 0.5, 0.9, 200, 43);
    CHECK(a.ci->lower != c.ci->lower);
}

TEST_CASE("bootstrap validation") {
    const auto s = make_sorted({0.0, 1.0, 2.0});
    CHECK_THROWS_AS(bootstrap_ci(s, 0.5, 0.95, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(bootstrap_ci(s, 0.5, 0.0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(bootstrap_ci(s, 0.5, 1.0, 10, 1), std::invalid_argument);
}
