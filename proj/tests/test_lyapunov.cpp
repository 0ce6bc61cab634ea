#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "holodyn/lyapunov.hpp"
#include "holodyn/rng.hpp"

using namespace holodyn;

namespace {

LyapEstimate formula1(cplx c) {
    return lyap_formula(FamilySpec::quadratic(), std::span<const cplx>(&c, 1));
}

}  // namespace

TEST_CASE("anchors: L(z^2) = L(z^2 - 2) = ln 2") {
    CHECK(std::abs(formula1(cplx(0.0)).value - std::numbers::ln2) < 1e-9);
    CHECK(std::abs(formula1(cplx(-2.0)).value - std::numbers::ln2) < 1e-9);
}

TEST_CASE("monomial normal forms: L = ln d") {
    // the unicritical normal form with all parameters zero is conjugate to
    // z -> z^d
    for (int d : {3, 4, 5}) {
        std::vector<cplx> params(d - 1, cplx(0.0));
        auto est = lyap_formula(FamilySpec::polyca(d), params);
        CHECK(std::abs(est.value - std::log(static_cast<double>(d))) < 1e-9);
    }
}

TEST_CASE("lift route equals critical route on random parameters") {
    CounterRng rng(31337, 0);
    for (int t = 0; t < 10; ++t) {
        cplx c(4.0 * rng.uniform(t, 0) - 2.0, 4.0 * rng.uniform(t, 1) - 2.0);
        auto m = instantiate(FamilySpec::quadratic(), c);
        auto a = formula1(c);
        auto b = lyap_demarco(m);
        CHECK(std::abs(a.value - b.value) < 1e-6);
    }
}

TEST_CASE("cycle sums of z^2 have closed-form levels") {
    // period-dividing level n: 2^{-n} (2^n - 1) ln 2
    cplx c(0.0);
    for (int n : {4, 6, 8}) {
        auto est = lyap_cycles(FamilySpec::quadratic(),
                               std::span<const cplx>(&c, 1), n);
        double want = (1.0 - std::pow(2.0, -n)) * std::numbers::ln2;
        CHECK(est.value == doctest::Approx(want).epsilon(1e-9));
        CHECK(est.error > 0.0);
    }
}

TEST_CASE("iterate doubles the exponent") {
    // L(f^2) = 2 L(f), computed through the lift of the squared map
    cplx c(-0.4, 0.35);
    auto m = instantiate(FamilySpec::quadratic(), c);
    RationalMapInstance m2 = m;
    m2.lift = iterate_lift(m.lift, 2);
    m2.deg = 4;
    m2.critical_lifts = critical_factorization(m2.lift);
    auto a = lyap_demarco(m);
    auto b = lyap_demarco(m2);
    CHECK(std::abs(b.value - 2.0 * a.value) < 1e-6);
}

TEST_CASE("birkhoff estimator hits the anchor and reports spread") {
    auto m = instantiate(FamilySpec::quadratic(), cplx(0.0));
    auto est = lyap_birkhoff(m, 20000, 12345);
    CHECK(std::abs(est.value - std::numbers::ln2) <
          std::max(3.0 * est.error, 1e-9));
}

TEST_CASE("birkhoff is worker-count independent") {
    auto m = instantiate(FamilySpec::quadratic(), cplx(-0.25, 0.55));
    auto a = lyap_birkhoff(m, 4000, 777, 1);
    auto b = lyap_birkhoff(m, 4000, 777, 4);
    CHECK(a.value == b.value);
}

TEST_CASE("mod2 exponent at sigma = (2, 0)") {
    cplx params[2] = {cplx(2.0), cplx(0.0)};
    auto m = instantiate(FamilySpec::mod2(), std::span<const cplx>(params, 2));
    auto est = lyap_demarco(m);
    CHECK(std::abs(est.value - std::numbers::ln2) < 1e-6);
}
