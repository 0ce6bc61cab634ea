#include "holodyn/cycles.hpp"

#include <algorithm>
#include <cmath>

#include "holodyn/green.hpp"

namespace holodyn {

long long dynatomic_degree(int d, int n) {
    long long nu = 0;
    for (auto k : divisors(n)) {
        long long dk = 1;
        for (std::uint64_t i = 0; i < k; ++i) dk *= d;
        nu += mobius(n / k) * dk;
    }
    return nu;
}

long long cycle_count(int d, int n) { return dynatomic_degree(d, n) / n; }

DynatomicPoly dynatomic(const RationalMapInstance& m, int n) {
    if (!m.polynomial)
        throw numeric_error("dynatomic: polynomial map required");
    // iterate polynomials P^k for the divisors of n
    std::vector<PolyC> iter(n + 1);
    iter[0] = PolyC::identity();
    for (int k = 1; k <= n; ++k) iter[k] = m.chart.compose(iter[k - 1]);
    PolyC num = PolyC::constant(1.0), den = PolyC::constant(1.0);
    for (auto k : divisors(n)) {
        int mu = mobius(n / k);
        if (mu == 0) continue;
        PolyC phi = iter[k] - PolyC::identity();
        if (mu > 0)
            num = num * phi;
        else
            den = den * phi;
    }
    if (!std::isfinite(num.coeff_norm()) || !std::isfinite(den.coeff_norm()))
        throw numeric_error("dynatomic: coefficient overflow at n=" +
                            std::to_string(n));
    DynatomicPoly out;
    out.n = n;
    double rem = 0.0;
    try {
        out.poly = den.degree() > 0 ? divide_exact(num, den, 1e-9, &rem)
                                    : num;
    } catch (const numeric_error& e) {
        throw numeric_error("dynatomic division failed at n=" +
                                std::to_string(n) +
                                " (parabolic collision?)",
                            e.residual());
    }
    out.nu = dynatomic_degree(m.deg, n);
    if (out.poly.degree() != out.nu)
        throw numeric_error("dynatomic degree mismatch at n=" +
                            std::to_string(n));
    return out;
}

namespace {

bool lex_less(cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

// Newton ratio Phi*_n / (Phi*_n)' evaluated through the dynamical
// recurrence: log-derivative sum over divisors, no coefficients built.
// Orbits that blow past the overflow guard switch to the asymptotic
// Phi_k'/Phi_k ~ d^k / z.
cplx dynatomic_newton_ratio(const PolyC& P, int n,
                            const std::vector<std::uint64_t>& divs,
                            const std::vector<int>& mob, cplx z) {
    int d = P.degree();
    cplx sum(0.0);
    cplx zk = z, Dk = cplx(1.0);
    std::size_t di = 0;
    bool escaped = false;
    for (int k = 1; k <= n && di < divs.size(); ++k) {
        if (!escaped) {
            cplx v, dv;
            P.eval2(zk, v, dv);
            Dk *= dv;
            zk = v;
            if (std::abs(zk) > 1e80 || !std::isfinite(std::abs(zk)))
                escaped = true;
        }
        if (static_cast<std::uint64_t>(k) == divs[di]) {
            if (mob[di] != 0) {
                if (escaped) {
                    double dk = std::pow(static_cast<double>(d), k);
                    sum += static_cast<double>(mob[di]) * dk / z;
                } else {
                    cplx phi = zk - z;
                    cplx dphi = Dk - 1.0;
                    if (std::abs(phi) < 1e-300)
                        phi = cplx(1e-300, 0.0);
                    sum += static_cast<double>(mob[di]) * dphi / phi;
                }
            }
            ++di;
        }
    }
    if (std::abs(sum) < 1e-300) sum = cplx(1e-300, 0.0);
    return 1.0 / sum;
}

// exact-period-n points of a polynomial map, by evaluation-based Aberth
std::vector<cplx> dynatomic_roots(const RationalMapInstance& m, int n) {
    long long nu = dynatomic_degree(m.deg, n);
    auto divs = divisors(n);
    std::vector<int> mob(divs.size());
    for (std::size_t i = 0; i < divs.size(); ++i)
        mob[i] = mobius(n / divs[i]);
    const PolyC& P = m.chart;
    double radius = 1.05 * escape_radius(P);
    auto ev = [&](cplx z, cplx& v, cplx& dv) {
        v = dynatomic_newton_ratio(P, n, divs, mob, z);
        dv = cplx(1.0);
    };
    return roots_by_evaluation(ev, static_cast<int>(nu), radius, 1e-11);
}

// chart pair used for the multiplier product on the sphere: the standard
// chart for |z| <= 1, the inverted chart otherwise, so every polynomial
// evaluation happens at modulus <= 1 and the factors telescope around the
// cycle to the multiplier.
struct ChartPoint {
    cplx zeta;     // coordinate in the chosen chart
    bool inverted;
};

ChartPoint to_chart(const C2& p) {
    // p is a unit lift
    if (std::abs(p.x) <= std::abs(p.y)) return {p.x / p.y, false};
    return {p.y / p.x, true};
}

cplx rational_derivative(const PolyC& num, const PolyC& den, cplx z) {
    cplx a, da, b, db;
    num.eval2(z, a, da);
    den.eval2(z, b, db);
    return (da * b - a * db) / (b * b);
}

PolyC reversed(const std::vector<cplx>& form) {
    return PolyC(std::vector<cplx>(form.rbegin(), form.rend()));
}

// derivative of (chart_out o f o chart_in^{-1}) at the chart coordinate
cplx chart_factor(const RationalMapInstance& m, const ChartPoint& from,
                  const ChartPoint& to) {
    PolyC A = m.chart_num, B = m.chart_den;
    PolyC rA = reversed(m.lift.a), rB = reversed(m.lift.b);
    if (!from.inverted && !to.inverted)
        return rational_derivative(A, B, from.zeta);
    if (!from.inverted && to.inverted)
        return rational_derivative(B, A, from.zeta);
    if (from.inverted && !to.inverted)
        return rational_derivative(rA, rB, from.zeta);
    return rational_derivative(rB, rA, from.zeta);
}

CycleClass classify(cplx w) {
    double aw = std::abs(w);
    if (aw > 1.0 + 1e-6) return CycleClass::Repelling;
    if (aw < 1.0 - 1e-6) return CycleClass::Attracting;
    return CycleClass::Neutral;
}

// group period-n points (as unit lifts) into cycles and compute multipliers
std::vector<CycleRecord> group_cycles(const RationalMapInstance& m,
                                      std::vector<C2> pts, int n,
                                      double tol) {
    std::vector<bool> used(pts.size(), false);
    std::vector<CycleRecord> cycles;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (used[i]) continue;
        std::vector<std::size_t> orbit{i};
        used[i] = true;
        C2 cur = pts[i];
        for (int s = 1; s < n; ++s) {
            C2 img = m.apply(cur).normalized();
            std::size_t best = pts.size();
            double d1 = 1e300, d2 = 1e300;
            for (std::size_t j = 0; j < pts.size(); ++j) {
                if (used[j]) continue;
                double dist = sphere_dist(img, pts[j]);
                if (dist < d1) {
                    d2 = d1;
                    d1 = dist;
                    best = j;
                } else if (dist < d2) {
                    d2 = dist;
                }
            }
            if (best == pts.size() || d1 > tol)
                throw numeric_error("cycle grouping failed (near-parabolic "
                                    "parameter?)",
                                    d1);
            if (d2 < tol)
                throw numeric_error("ambiguous cycle grouping "
                                    "(near-parabolic parameter)",
                                    d2);
            used[best] = true;
            orbit.push_back(best);
            cur = pts[best];
        }
        // closure check
        C2 back = m.apply(cur).normalized();
        if (sphere_dist(back, pts[i]) > tol)
            throw numeric_error("cycle does not close after n steps",
                                sphere_dist(back, pts[i]));
        // multiplier by the chart-aware chain product
        cplx w(1.0);
        for (int s = 0; s < n; ++s) {
            ChartPoint from = to_chart(pts[orbit[s]]);
            ChartPoint to = to_chart(pts[orbit[(s + 1) % n]]);
            w *= chart_factor(m, from, to);
        }
        CycleRecord rec;
        rec.period = n;
        // deterministic representative: lex-least chart value in the orbit
        cplx rep = cplx(1e300, 1e300);
        bool rep_inf = false;
        for (auto idx : orbit) {
            const C2& p = pts[idx];
            if (std::abs(p.y) < 1e-12 * std::abs(p.x)) {
                rep_inf = true;
                continue;
            }
            cplx zv = p.x / p.y;
            if (lex_less(zv, rep)) rep = zv;
        }
        rec.representative = rep_inf && rep.real() > 1e299 ? cplx(0.0) : rep;
        rec.at_infinity = rep_inf && rep.real() > 1e299;
        rec.multiplier = w;
        rec.cls = classify(w);
        cycles.push_back(rec);
    }
    std::sort(cycles.begin(), cycles.end(),
              [](const CycleRecord& a, const CycleRecord& b) {
                  return lex_less(a.multiplier, b.multiplier);
              });
    return cycles;
}

// exact-period filter for the rational-map route
bool has_lower_period(const RationalMapInstance& m, const C2& p, int n,
                      double tol) {
    for (auto k : divisors(n)) {
        if (static_cast<int>(k) == n) continue;
        C2 cur = p;
        for (std::uint64_t s = 0; s < k; ++s) cur = m.apply(cur).normalized();
        if (sphere_dist(cur, p) < tol) return true;
    }
    return false;
}

}  // namespace

std::vector<CycleRecord> periodic_cycles(const RationalMapInstance& m, int n,
                                         double tol) {
    std::vector<C2> pts;
    if (m.polynomial) {
        for (cplx z : dynatomic_roots(m, n))
            pts.push_back(C2{z, 1.0}.normalized());
        // guard against parabolic collisions: dynatomic roots of strictly
        // lower period are flagged, not silently grouped
        for (const auto& p : pts)
            if (n > 1 && has_lower_period(m, p, n, tol))
                throw numeric_error("parabolic collision: lower-period root "
                                    "in the period-" + std::to_string(n) +
                                    " dynatomic locus");
    } else {
        // fixed points of f^n: roots of F^n_1(z,1) - z F^n_2(z,1), plus
        // the point at infinity when the degree drops
        HomPair Fn = iterate_lift(m.lift, n);
        PolyC p = PolyC(std::vector<cplx>(Fn.a)) -
                  PolyC::identity() * PolyC(std::vector<cplx>(Fn.b));
        p.trim(1e-12 * p.coeff_norm());
        long long full_deg = 1;
        for (int i = 0; i < n; ++i) full_deg *= m.deg;
        full_deg += 1;
        std::vector<C2> candidates;
        if (p.degree() >= 1)
            for (cplx z : roots(p, 1e-12))
                candidates.push_back(C2{z, 1.0}.normalized());
        for (long long k = candidates.size(); k < full_deg; ++k)
            candidates.push_back({1.0, 0.0});
        for (const auto& c : candidates)
            if (!has_lower_period(m, c, n, tol)) pts.push_back(c);
    }
    double group_tol = tol;
    return group_cycles(m, std::move(pts), n, group_tol);
}

MultiplierSpectrum multiplier_spectrum(const FamilySpec& family,
                                       std::span<const cplx> params, int n) {
    auto m = instantiate(family, params);
    MultiplierSpectrum s;
    s.params.assign(params.begin(), params.end());
    s.n = n;
    try {
        for (const auto& c : periodic_cycles(m, n))
            s.multipliers.push_back(c.multiplier);
    } catch (const numeric_error&) {
        s.collision_flagged = true;
        throw;
    }
    std::sort(s.multipliers.begin(), s.multipliers.end(), lex_less);
    return s;
}

double lyap_spectrum_average(const FamilySpec& family,
                             std::span<const cplx> params, int n) {
    auto m = instantiate(family, params);
    double sum = 0.0;
    for (const auto& c : periodic_cycles(m, n))
        if (std::abs(c.multiplier) > 1.0)
            sum += std::log(std::abs(c.multiplier));
    return sum * std::pow(static_cast<double>(m.deg), -n);
}

namespace {

// Newton ratio for the exact-period-n center equation in c: the zeros of
// the Moebius product prod_{k|n} (P_c^k(0))^{mu(n/k)} are precisely the
// period-n centers, and its log-derivative is a plain sum along the
// dynamical recurrence with the c-derivative propagated jointly.
// Escaped orbits fall back to the dominant-term ratio scaling.
cplx center_newton_ratio(int n, const std::vector<std::uint64_t>& divs,
                         const std::vector<int>& mob, cplx c) {
    // direct (z_k, dz_k/dc) until |z| is large, then the reciprocal pair
    // (u, r) = (1/z, z'/z), which stays bounded: u' = u^2/(1+cu^2),
    // r' = 2r/(1+cu^2) + u'. Only r enters the log-derivative sum.
    cplx z(0.0), w(0.0), u(0.0), r(0.0);
    bool inverted = false;
    cplx sum(0.0);
    std::size_t di = 0;
    for (int k = 1; k <= n; ++k) {
        if (!inverted) {
            w = 2.0 * z * w + 1.0;
            z = z * z + c;
            if (std::abs(z) > 1e50) {
                inverted = true;
                u = 1.0 / z;
                r = w / z;
            }
        } else {
            cplx q = 1.0 + c * u * u;
            cplx un = u * u / q;
            r = 2.0 * r / q + un;
            u = un;
        }
        if (di < divs.size() && static_cast<int>(divs[di]) == k) {
            if (mob[di] != 0) {
                cplx term = inverted ? r : w / z;
                if (!inverted && std::abs(z) < 1e-300)
                    term = w / cplx(1e-300, 0.0);
                sum += static_cast<double>(mob[di]) * term;
            }
            ++di;
        }
    }
    if (std::abs(sum) < 1e-300) sum = cplx(1e-300, 0.0);
    return 1.0 / sum;
}

}  // namespace

std::vector<cplx> per_n_centers(int n) {
    if (n < 1 || n > 14) throw numeric_error("per_n_centers: 1 <= n <= 14");
    if (n == 1) return {cplx(0.0)};
    // deg_c of the Moebius product is sum mu(n/k) 2^{k-1} = nu_2(n)/2
    long long count = dynatomic_degree(2, n) / 2;
    auto divs = divisors(n);
    std::vector<int> mob(divs.size());
    for (std::size_t i = 0; i < divs.size(); ++i)
        mob[i] = mobius(static_cast<std::uint64_t>(n) / divs[i]);
    auto ev = [&](cplx c, cplx& v, cplx& dv) {
        v = center_newton_ratio(n, divs, mob, c);
        dv = cplx(1.0);
    };
    auto cs = roots_by_evaluation(ev, static_cast<int>(count), 2.2, 1e-12);
    std::sort(cs.begin(), cs.end(), lex_less);
    return cs;
}

namespace {

// orbit value, multiplier, and their (c, z0) derivatives for z -> z^2 + c
struct OrbitState {
    cplx zn;       // P_c^n(z0)
    cplx lambda;   // multiplier product of 2 z_k
};

OrbitState quad_orbit(cplx c, cplx z0, int n) {
    OrbitState s;
    cplx z = z0;
    s.lambda = 1.0;
    for (int k = 0; k < n; ++k) {
        s.lambda *= 2.0 * z;
        z = z * z + c;
    }
    s.zn = z;
    return s;
}

}  // namespace

ContinuationResult per_n_w(int n, cplx w, int steps) {
    if (n < 1 || n > 10) throw numeric_error("per_n_w: 1 <= n <= 10");
    ContinuationResult out;
    auto centers = per_n_centers(n);
    for (cplx c0 : centers) {
        cplx c = c0, z = cplx(0.0);
        bool ok = true;
        for (int s = 1; s <= steps && ok; ++s) {
            cplx target = w * (static_cast<double>(s) / steps);
            // Newton on (P_c^n(z) - z, multiplier - target)
            ok = false;
            for (int it = 0; it < 50; ++it) {
                OrbitState f0 = quad_orbit(c, z, n);
                cplx g1 = f0.zn - z;
                cplx g2 = f0.lambda - target;
                if (std::abs(g1) < 1e-12 && std::abs(g2) < 1e-12) {
                    ok = true;
                    break;
                }
                double hc = 1e-7 * (1.0 + std::abs(c));
                double hz = 1e-7 * (1.0 + std::abs(z));
                OrbitState fc = quad_orbit(c + hc, z, n);
                OrbitState fz = quad_orbit(c, z + hz, n);
                cplx a11 = (fc.zn - f0.zn) / hc;
                cplx a12 = (fz.zn - f0.zn) / hz - 1.0;
                cplx a21 = (fc.lambda - f0.lambda) / hc;
                cplx a22 = (fz.lambda - f0.lambda) / hz;
                cplx det = a11 * a22 - a12 * a21;
                if (std::abs(det) < 1e-300) break;
                cplx dc = (g1 * a22 - g2 * a12) / det;
                cplx dz = (a11 * g2 - a21 * g1) / det;
                c -= dc;
                z -= dz;
                if (!std::isfinite(std::abs(c)) ||
                    !std::isfinite(std::abs(z)))
                    break;
            }
        }
        if (ok)
            out.params.push_back(c);
        else
            out.failed_from.push_back(c0);
    }
    std::sort(out.params.begin(), out.params.end(), lex_less);
    return out;
}

}  // namespace holodyn
