#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <algorithm>
#include <complex>
#include <vector>

#include "holodyn/polyalg.hpp"

using namespace holodyn;

namespace {

PolyC from_roots(const std::vector<cplx>& rs) {
    PolyC p({cplx(1.0)});
    for (cplx r : rs) p = p * PolyC({-r, cplx(1.0)});
    return p;
}

void match_sets(std::vector<cplx> a, std::vector<cplx> b, double tol) {
    REQUIRE(a.size() == b.size());
    for (cplx z : a) {
        double best = 1e300;
        std::size_t bi = 0;
        for (std::size_t i = 0; i < b.size(); ++i)
            if (std::abs(b[i] - z) < best) {
                best = std::abs(b[i] - z);
                bi = i;
            }
        CHECK(best < tol);
        b.erase(b.begin() + bi);
    }
}

}  // namespace

TEST_CASE("horner eval and derivative") {
    PolyC p({cplx(1.0), cplx(-3.0), cplx(0.0), cplx(2.0)});  // 1-3z+2z^3
    cplx z(0.5, -1.25);
    cplx v, d;
    p.eval2(z, v, d);
    cplx vref = cplx(1.0) - 3.0 * z + 2.0 * z * z * z;
    cplx dref = cplx(-3.0) + 6.0 * z * z;
    CHECK(std::abs(v - vref) < 1e-14);
    CHECK(std::abs(d - dref) < 1e-14);
    CHECK(std::abs(p.eval(z) - vref) < 1e-14);
}

TEST_CASE("arithmetic and composition") {
    PolyC a({cplx(1.0), cplx(2.0)});          // 1+2z
    PolyC b({cplx(0.0), cplx(0.0), cplx(1.0)});  // z^2
    PolyC c = b.compose(a);                    // (1+2z)^2
    REQUIRE(c.degree() == 2);
    CHECK(std::abs(c.coeffs[0] - cplx(1.0)) < 1e-15);
    CHECK(std::abs(c.coeffs[1] - cplx(4.0)) < 1e-15);
    CHECK(std::abs(c.coeffs[2] - cplx(4.0)) < 1e-15);

    PolyC d = (a * a - c);
    CHECK(d.is_zero());
}

TEST_CASE("divrem and exact division") {
    PolyC num = from_roots({cplx(1.0), cplx(2.0), cplx(-0.5, 0.5)});
    PolyC den = from_roots({cplx(2.0)});
    PolyC q, r;
    divrem(num, den, q, r);
    CHECK(r.is_zero());
    PolyC back = q * den;
    for (int i = 0; i <= num.degree(); ++i)
        CHECK(std::abs(back.coeffs[i] - num.coeffs[i]) < 1e-13);

    PolyC qe = divide_exact(num, den);
    CHECK(qe.degree() == 2);
    CHECK_THROWS_AS(divide_exact(num, from_roots({cplx(3.0)})),
                    numeric_error);
}

TEST_CASE("mobius and divisors") {
    int mu[] = {1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0};
    for (std::uint64_t n = 1; n <= 12; ++n)
        CHECK(mobius(n) == mu[n - 1]);
    auto dv = divisors(12);
    std::vector<std::uint64_t> want{1, 2, 3, 4, 6, 12};
    CHECK(dv == want);
}

TEST_CASE("roots of known cubic") {
    std::vector<cplx> rs{cplx(1.0), cplx(2.0), cplx(3.0)};
    auto got = roots(from_roots(rs));
    match_sets(rs, got, 1e-9);
}

TEST_CASE("roots of unity, high degree") {
    // z^64 - 1
    std::vector<cplx> cs(65, cplx(0.0));
    cs[0] = cplx(-1.0);
    cs[64] = cplx(1.0);
    auto got = roots(PolyC(cs));
    REQUIRE(got.size() == 64);
    for (cplx z : got) {
        CHECK(std::abs(std::abs(z) - 1.0) < 1e-10);
        cplx p = std::pow(z, 64);
        CHECK(std::abs(p - cplx(1.0)) < 1e-8);
    }
}

TEST_CASE("roots_by_evaluation matches coefficient route") {
    std::vector<cplx> rs{cplx(0.3, 0.4),  cplx(-1.2, 0.1), cplx(0.9, -0.9),
                         cplx(-0.4, -.6), cplx(1.5, 0.0)};
    PolyC p = from_roots(rs);
    auto ev = [&p](cplx z, cplx& v, cplx& d) { p.eval2(z, v, d); };
    auto got = roots_by_evaluation(ev, p.degree(), 3.0, 1e-12);
    match_sets(rs, got, 1e-9);
}

TEST_CASE("resultant anchor and homogeneity") {
    for (int d = 2; d <= 5; ++d) {
        HomPair F;
        F.a.assign(d + 1, cplx(0.0));
        F.b.assign(d + 1, cplx(0.0));
        F.a[d] = cplx(1.0);  // z1^d
        F.b[0] = cplx(1.0);  // z2^d
        CHECK(std::abs(resultant(F) - cplx(1.0)) < 1e-12);
    }

    // Res(tF) = t^{2d} Res(F)
    HomPair F;
    F.a = {cplx(0.3), cplx(0.0), cplx(1.0)};   // z1^2 + 0.3 z2^2
    F.b = {cplx(1.0), cplx(-0.2), cplx(0.0)};  // -0.2 z1 z2 + z2^2
    cplx r1 = resultant(F);
    cplx t(1.7, -0.4);
    HomPair G = F;
    for (auto& c : G.a) c *= t;
    for (auto& c : G.b) c *= t;
    cplx r2 = resultant(G);
    CHECK(std::abs(r2 - std::pow(t, 4) * r1) < 1e-8 * std::abs(r2));
}

TEST_CASE("degenerate pair has zero resultant") {
    HomPair F;
    // both components share the factor (z1 - z2)
    F.a = {cplx(0.0), cplx(-1.0), cplx(1.0)};  // z1^2 - z1 z2
    F.b = {cplx(0.0), cplx(-2.0), cplx(2.0)};
    CHECK(std::abs(resultant(F)) < 1e-12);
}
