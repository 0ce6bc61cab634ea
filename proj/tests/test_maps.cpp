#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <algorithm>
#include <complex>
#include <vector>

#include "holodyn/maps.hpp"

using namespace holodyn;

TEST_CASE("quadratic instance chart") {
    cplx c(-0.75, 0.1);
    auto m = instantiate(FamilySpec::quadratic(), c);
    CHECK(m.deg == 2);
    CHECK(m.polynomial);
    REQUIRE(m.chart.degree() == 2);
    CHECK(std::abs(m.chart.coeffs[0] - c) < 1e-15);
    CHECK(std::abs(m.chart.coeffs[1]) < 1e-15);
    CHECK(std::abs(m.chart.coeffs[2] - cplx(1.0)) < 1e-15);

    cplx z(0.3, -0.8);
    CHECK(std::abs(m.chart_value(z) - (z * z + c)) < 1e-13);
    CHECK(std::abs(m.chart_derivative(z) - 2.0 * z) < 1e-13);

    // the lift agrees with the chart on the affine slice
    C2 p{z, cplx(1.0)};
    C2 q = m.apply(p);
    CHECK(std::abs(q.x / q.y - (z * z + c)) < 1e-12);
}

TEST_CASE("critical factorization reproduces the jacobian") {
    cplx params[2] = {cplx(0.4, -0.3), cplx(-0.2, 0.15)};
    auto m = instantiate(FamilySpec::polyca(3), std::span<const cplx>(params, 2));
    REQUIRE(static_cast<int>(m.critical_lifts.size()) == 2 * m.deg - 2);
    for (int trial = 0; trial < 5; ++trial) {
        C2 z{cplx(0.3 * trial - 0.7, 0.4), cplx(1.0, -0.1 * trial)};
        cplx det = m.det_jacobian(z);
        cplx prod(1.0);
        for (const auto& cl : m.critical_lifts) prod *= wedge(cl, z);
        CHECK(std::abs(det - prod) < 1e-9 * std::max(1.0, std::abs(det)));
    }
}

TEST_CASE("spherical derivative is chart independent") {
    auto m = instantiate(FamilySpec::quadratic(), cplx(-1.0, 0.2));
    C2 z{cplx(0.4, 0.7), cplx(1.0)};
    double s1 = m.spherical_derivative(z);
    // same projective point, different lift
    cplx t(3.0, -2.0);
    C2 zt{z.x * t, z.y * t};
    double s2 = m.spherical_derivative(zt);
    CHECK(s1 == doctest::Approx(s2).epsilon(1e-12));
}

TEST_CASE("fixed point multipliers of z^2") {
    auto m = instantiate(FamilySpec::quadratic(), cplx(0.0));
    auto w = fixed_point_multipliers(m);
    REQUIRE(w.size() == 3);
    // z=0 (w=0), z=1 (w=2), z=infinity (w=0)
    std::sort(w.begin(), w.end(), [](cplx a, cplx b) {
        return std::abs(a) < std::abs(b);
    });
    CHECK(std::abs(w[0]) < 1e-10);
    CHECK(std::abs(w[1]) < 1e-10);
    CHECK(std::abs(w[2] - cplx(2.0)) < 1e-10);
}

TEST_CASE("mod2 multiplier cubic identity") {
    // the three fixed point multipliers satisfy
    // X^3 - s1 X^2 + s2 X - (s1 - 2) = 0 and s3 = s1 - 2
    cplx s1(1.3, -0.4), s2(0.2, 0.9);
    auto w = mod2_multipliers(s1, s2);
    REQUIRE(w.size() == 3);
    cplx e1 = w[0] + w[1] + w[2];
    cplx e2 = w[0] * w[1] + w[0] * w[2] + w[1] * w[2];
    cplx e3 = w[0] * w[1] * w[2];
    CHECK(std::abs(e1 - s1) < 1e-9);
    CHECK(std::abs(e2 - s2) < 1e-9);
    CHECK(std::abs(e3 - (s1 - 2.0)) < 1e-9);
}

TEST_CASE("mod2 instance realizes requested multipliers") {
    cplx s1(0.8, 0.3), s2(-0.5, 0.2);
    cplx params[2] = {s1, s2};
    auto m = instantiate(FamilySpec::mod2(), std::span<const cplx>(params, 2));
    auto got = fixed_point_multipliers(m);
    auto want = mod2_multipliers(s1, s2);
    REQUIRE(got.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(std::abs(got[i] - want[i]) < 1e-7);
}

TEST_CASE("per1 line contains mod2 maps with a fixed point of multiplier w") {
    cplx w(0.3, -0.6);
    auto line = per1_line_mod2(w);
    // pick two points (s1, s2) on the line A s1 + B s2 + C = 0 and check
    // that w is among the fixed point multipliers there
    for (int trial = 0; trial < 2; ++trial) {
        cplx s1(0.2 + 0.5 * trial, -0.3);
        cplx s2 = (-line.C - line.A * s1) / line.B;
        auto ws = mod2_multipliers(s1, s2);
        double best = 1e300;
        for (cplx v : ws) best = std::min(best, std::abs(v - w));
        CHECK(best < 1e-8);
    }
}

TEST_CASE("preimages invert the map") {
    auto m = instantiate(FamilySpec::quadratic(), cplx(-0.4, 0.3));
    C2 w{cplx(0.9, -0.2), cplx(1.0)};
    auto pre = preimage_points(m, w);
    REQUIRE(static_cast<int>(pre.size()) == m.deg);
    for (const auto& p : pre) {
        C2 q = m.apply(p);
        CHECK(sphere_dist(q, w) < 1e-9);
    }
}

TEST_CASE("iterate lift projects to the iterated chart map") {
    auto m = instantiate(FamilySpec::quadratic(), cplx(-1.1, 0.1));
    HomPair F2 = iterate_lift(m.lift, 2);
    CHECK(F2.degree() == 4);
    cplx z(0.2, 0.3);
    cplx pz = m.chart_value(m.chart_value(z));
    cplx num = F2.eval_a(z, cplx(1.0));
    cplx den = F2.eval_b(z, cplx(1.0));
    CHECK(std::abs(num / den - pz) < 1e-10);
}
