#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qfgcpe/chaos.hpp"
#include "qfgcpe/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

using namespace qfgcpe;
using namespace qfgcpe::chaos;

TEST_CASE("orbit basics") {
    OrbitConfig cfg;
    cfg.c = 0.0;
    cfg.x0 = 0.1;
    cfg.burn_in = 10;
    cfg.length = 100;
    const auto zero = orbit(cfg);
    for (double x : zero.values) CHECK(x == doctest::Approx(0.0));

    cfg.c = 2.0;
    cfg.burn_in = 1000;
    cfg.length = 1000;
    const auto fixed = orbit(cfg);
    CHECK(fixed.values.back() - fixed.values.front() < 1e-10);
    CHECK(fixed.values.front() == doctest::Approx(0.5).epsilon(1e-9));

    cfg.c = 4.0;
    cfg.length = 5000;
    const auto chaotic = orbit(cfg);
    CHECK(chaotic.values.back() - chaotic.values.front() > 0.9);
    CHECK(std::is_sorted(chaotic.values.begin(), chaotic.values.end()));
    for (double x : chaotic.values) {
        CHECK(x >= 0.0);
        CHECK(x <= 1.0);
    }
}

TEST_CASE("orbit validation") {
    OrbitConfig cfg;
    cfg.c = 4.5;
    CHECK_THROWS_AS(orbit(cfg), std::invalid_argument);
    cfg = OrbitConfig{};
    cfg.x0 = 0.0;
    CHECK_THROWS_AS(orbit(cfg), std::invalid_argument);
    cfg = OrbitConfig{};
    cfg.length = 1;
    CHECK_THROWS_AS(orbit(cfg), std::invalid_argument);
    cfg = OrbitConfig{};
    cfg.burn_in = -1;
    CHECK_THROWS_AS(orbit(cfg), std::invalid_argument);
}

TEST_CASE("entropy sweep grid order and regime signal") {
    SweepSpec spec;
    spec.c_grid = {2.0, 3.2, 3.7};
    spec.eta_grid = {0.25, 0.5};
    spec.orbit.x0 = 0.1;
    spec.orbit.burn_in = 1000;
    spec.orbit.length = 5000;
    const auto rows = entropy_sweep(spec);
    REQUIRE(rows.size() == 6);
    // grid order: c outer, eta inner
    CHECK(rows[0].c == doctest::Approx(2.0));
    CHECK(rows[0].eta == doctest::Approx(0.25));
    CHECK(rows[1].c == doctest::Approx(2.0));
    CHECK(rows[1].eta == doctest::Approx(0.5));
    CHECK(rows[5].c == doctest::Approx(3.7));
    // fixed point regime: entropy vanishes
    CHECK(rows[0].qfgcpe < 1e-6);
    CHECK(rows[1].qfgcpe < 1e-6);
    // chaotic regime beats the periodic window at every eta
    CHECK(rows[4].qfgcpe > rows[2].qfgcpe); // eta 0.25: c=3.7 vs c=3.2
    CHECK(rows[5].qfgcpe > rows[3].qfgcpe); // eta 0.5
}

TEST_CASE("sweep validation") {
    SweepSpec spec;
    CHECK_THROWS_AS(entropy_sweep(spec), std::invalid_argument);
    spec.c_grid = {2.0};
    spec.eta_grid = {0.0};
    CHECK_THROWS_AS(entropy_sweep(spec), std::invalid_argument);
}

TEST_CASE("bifurcation points") {
    OrbitConfig tmpl;
    tmpl.x0 = 0.1;
    tmpl.burn_in = 1000;

    auto pts = bifurcation_points({2.0}, tmpl, 10);
    REQUIRE(pts.size() == 10);
    for (const auto& p : pts) {
        CHECK(p.c == doctest::Approx(2.0));
        CHECK(p.x == doctest::Approx(0.5).epsilon(1e-9));
    }

    pts = bifurcation_points({1.0}, tmpl, 10);
    for (const auto& p : pts) CHECK(std::abs(p.x) < 1e-2);

    // period-2 window: exactly two clusters at tolerance 1e-6
    pts = bifurcation_points({3.2}, tmpl, 100);
    std::vector<double> xs;
    for (const auto& p : pts) xs.push_back(p.x);
    std::sort(xs.begin(), xs.end());
    int clusters = 1;
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (xs[i] - xs[i - 1] > 1e-6) ++clusters;
    CHECK(clusters == 2);

    CHECK_THROWS_AS(bifurcation_points({2.0}, tmpl, 0), std::invalid_argument);
}

TEST_CASE("regime separation at desk scale") {
    SweepSpec spec;
    spec.c_grid = {1.0, 1.5, 2.0, 2.5, 3.6, 3.7, 3.8, 3.9, 4.0};
    spec.eta_grid = {0.5};
    spec.orbit.x0 = 0.1;
    spec.orbit.burn_in = 1000;
    spec.orbit.length = 5000;
    const auto rows = entropy_sweep(spec);
    double stable = 0.0, chaotic = 0.0;
    for (const auto& r : rows)
        (r.c <= 2.5 ? stable : chaotic) += r.qfgcpe;
    stable /= 4.0;
    chaotic /= 5.0;
    CHECK(chaotic >= 10.0 * stable);
}
