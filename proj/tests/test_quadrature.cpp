#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qfgcpe/errors.hpp"
#include "qfgcpe/quadrature.hpp"
#include "qfgcpe/special_functions.hpp"

#include <cmath>
#include <stdexcept>

using namespace qfgcpe;

TEST_CASE("polynomial and trigonometric integrals") {
    QuadratureControl ctl;
    auto r1 = integrate([](double x) { return x * x; }, 0.0, 1.0, ctl);
    CHECK(r1.value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    auto r2 = integrate([](double x) { return std::sin(x); }, 0.0, M_PI, ctl);
    CHECK(r2.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r2.abs_err <= 1e-9);
}

TEST_CASE("weighted log-power moments match the gamma identity") {
    // int_0^1 p^c (-ln p)^eta dp = Gamma(eta+1) / (c+1)^(eta+1)
    QuadratureControl ctl;
    for (double c : {0.0, 1.0, 2.5}) {
        for (double eta : {0.5, 1.0, 1.75}) {
            auto r = integrate(
                [c, eta](double p) { return std::pow(p, c) * std::pow(-std::log(p), eta); },
                1e-14, 1.0 - 1e-14, ctl, {1e-6, 1e-3, 0.5, 1.0 - 1e-3, 1.0 - 1e-6});
            const double exact =
                specfun::gamma_fn(eta + 1.0) / std::pow(c + 1.0, eta + 1.0);
            CHECK(r.value == doctest::Approx(exact).epsilon(1e-9));
        }
    }
}

TEST_CASE("integrable endpoint singularity") {
    QuadratureControl ctl;
    auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 1e-18, 1.0, ctl,
                       {1e-12, 1e-6, 1e-3});
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("breakpoints outside the interval are ignored") {
    QuadratureControl ctl;
    auto r = integrate([](double x) { return x; }, 0.0, 1.0, ctl, {-5.0, 0.5, 7.0});
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("subdivision budget exhaustion raises ConvergenceError") {
    QuadratureControl ctl;
    ctl.max_subdivisions = 3;
    CHECK_THROWS_AS(integrate([](double x) { return 1.0 / std::sqrt(x); }, 1e-300, 1.0, ctl),
                    ConvergenceError);
}

TEST_CASE("invalid interval rejected") {
    QuadratureControl ctl;
    CHECK_THROWS_AS(integrate([](double x) { return x; }, 1.0, 0.0, ctl),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate([](double x) { return x; }, 1.0, 1.0, ctl),
                    std::invalid_argument);
}

TEST_CASE("reported error bound is honest") {
    QuadratureControl ctl;
    auto r = integrate([](double x) { return std::exp(x); }, 0.0, 2.0, ctl);
    CHECK(std::abs(r.value - (std::exp(2.0) - 1.0)) <= std::max(r.abs_err, 1e-12));
}
