#include "holodyn/maps.hpp"

#include <algorithm>
#include <cmath>

namespace holodyn {

double C2::norm() const { return std::hypot(std::abs(x), std::abs(y)); }

C2 C2::normalized() const {
    double n = norm();
    return {x / n, y / n};
}

cplx wedge(const C2& c, const C2& z) { return c.x * z.y - c.y * z.x; }

double sphere_dist(const C2& z, const C2& w) {
    return std::abs(wedge(z, w)) / (z.norm() * w.norm());
}

namespace {

// evaluate a degree-(size-1) binary form, coefficients ascending in z1
cplx eval_form(const std::vector<cplx>& c, cplx z1, cplx z2) {
    cplx v(0.0), p1(1.0);
    std::vector<cplx> pw(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        pw[i] = p1;
        p1 *= z1;
    }
    cplx p2(1.0);
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
        v += c[i] * pw[i] * p2;
        p2 *= z2;
    }
    return v;
}

// partial derivatives of a form, as forms one degree lower
std::vector<cplx> d_z1(const std::vector<cplx>& c) {
    std::vector<cplx> r(c.size() - 1, cplx(0.0));
    for (std::size_t i = 1; i < c.size(); ++i)
        r[i - 1] = c[i] * static_cast<double>(i);
    return r;
}

std::vector<cplx> d_z2(const std::vector<cplx>& c) {
    int d = static_cast<int>(c.size()) - 1;
    std::vector<cplx> r(c.size() - 1, cplx(0.0));
    for (int i = 0; i < d; ++i) r[i] = c[i] * static_cast<double>(d - i);
    return r;
}

PolyC dehom(const std::vector<cplx>& c) {
    return PolyC(std::vector<cplx>(c.begin(), c.end()));
}

double sphere_log_distortion(const HomPair& F) {
    // ln M with M >= max(|F(u)|, 1/|F(u)|) on the unit sphere of C^2,
    // from a deterministic 512-point sample inflated by 1.5x
    double worst = 0.0;
    const double pi = 3.14159265358979323846;
    for (int it = 0; it < 8; ++it) {
        double t = (it + 0.5) * (0.5 * pi) / 8.0;
        double c = std::cos(t), s = std::sin(t);
        for (int ip = 0; ip < 8; ++ip) {
            double p1 = ip * (2.0 * pi) / 8.0;
            for (int iq = 0; iq < 8; ++iq) {
                double p2 = iq * (2.0 * pi) / 8.0 + 0.39;
                cplx z1 = std::polar(c, p1), z2 = std::polar(s, p2);
                C2 v{F.eval_a(z1, z2), F.eval_b(z1, z2)};
                double n = v.norm();
                if (n <= 0.0 || !std::isfinite(n))
                    throw numeric_error("degenerate lift");
                worst = std::max(worst, std::abs(std::log(n)));
            }
        }
    }
    return 1.5 * worst;
}

void finish_instance(RationalMapInstance& m) {
    m.deg = m.lift.degree();
    m.chart_num = dehom(m.lift.a);
    m.chart_den = dehom(m.lift.b);
    // polynomial iff F2 has only the z2^d monomial
    m.polynomial = true;
    for (std::size_t i = 1; i < m.lift.b.size(); ++i)
        if (std::abs(m.lift.b[i]) > 0.0) m.polynomial = false;
    if (std::abs(m.lift.b[0]) == 0.0) m.polynomial = false;
    if (m.polynomial) {
        m.chart = m.chart_num;
        m.chart *= 1.0 / m.lift.b[0];
    }
    m.critical_lifts = critical_factorization(m.lift);
    m.log_distortion = sphere_log_distortion(m.lift);
}

// elementary symmetric polynomials of the values in c
std::vector<cplx> elementary_symmetric(std::span<const cplx> c) {
    std::vector<cplx> e(c.size() + 1, cplx(0.0));
    e[0] = 1.0;
    for (std::size_t k = 0; k < c.size(); ++k)
        for (std::size_t j = std::min(k + 1, e.size() - 1); j >= 1; --j)
            e[j] += c[k] * e[j - 1];
    return e;
}

void check_finite(std::span<const cplx> params) {
    for (const auto& p : params)
        if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
            throw numeric_error("non-finite parameter");
}

}  // namespace

C2 RationalMapInstance::apply(const C2& z) const {
    return {lift.eval_a(z.x, z.y), lift.eval_b(z.x, z.y)};
}

cplx RationalMapInstance::det_jacobian(const C2& z) const {
    cplx d1a = eval_form(d_z1(lift.a), z.x, z.y);
    cplx d2a = eval_form(d_z2(lift.a), z.x, z.y);
    cplx d1b = eval_form(d_z1(lift.b), z.x, z.y);
    cplx d2b = eval_form(d_z2(lift.b), z.x, z.y);
    return d1a * d2b - d2a * d1b;
}

double RationalMapInstance::spherical_derivative(const C2& zin) const {
    C2 z = zin.normalized();
    C2 fz = apply(z);
    double n2 = fz.norm();
    return std::abs(det_jacobian(z)) / (deg * n2 * n2);
}

cplx RationalMapInstance::chart_value(cplx z) const {
    return chart_num.eval(z) / chart_den.eval(z);
}

cplx RationalMapInstance::chart_derivative(cplx z) const {
    cplx a, da, b, db;
    chart_num.eval2(z, a, da);
    chart_den.eval2(z, b, db);
    return (da * b - a * db) / (b * b);
}

std::vector<cplx> mod2_multipliers(cplx s1, cplx s2) {
    PolyC cubic({-(s1 - 2.0), s2, -s1, cplx(1.0)});
    auto mu = roots(cubic, 1e-13);
    std::sort(mu.begin(), mu.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return mu;
}

RationalMapInstance instantiate(const FamilySpec& family,
                                std::span<const cplx> params) {
    if (static_cast<int>(params.size()) != family.param_dim())
        throw numeric_error("parameter dimension mismatch");
    check_finite(params);

    RationalMapInstance m;
    m.family = family;
    m.params.assign(params.begin(), params.end());

    switch (family.kind) {
        case FamilyKind::Quadratic: {
            // z^2 + c, lift (z1^2 + c z2^2, z2^2)
            m.lift.a = {params[0], 0.0, 1.0};
            m.lift.b = {1.0, 0.0, 0.0};
            break;
        }
        case FamilyKind::PolyCA: {
            int d = family.degree;
            std::span<const cplx> c = params.subspan(0, d - 2);
            cplx a = params[d - 2];
            auto sigma = elementary_symmetric(c);
            std::vector<cplx> p(d + 1, cplx(0.0));
            p[d] = 1.0 / d;
            for (int j = 2; j <= d - 1; ++j) {
                double sign = ((d - j) % 2 == 0) ? 1.0 : -1.0;
                p[j] = sign / j * sigma[d - j];
            }
            p[0] = std::pow(a, d);
            m.lift.a = p;
            m.lift.b.assign(d + 1, cplx(0.0));
            m.lift.b[0] = 1.0;
            break;
        }
        case FamilyKind::Mod2: {
            auto mu = mod2_multipliers(params[0], params[1]);
            // degenerate class sigma=(3,3): all multipliers 1, f ~ z + 1/z
            bool all_one = true;
            for (auto& v : mu)
                if (std::abs(v - 1.0) > 1e-8) all_one = false;
            if (all_one) {
                m.lift.a = {1.0, 0.0, 1.0};  // z1^2 + z2^2
                m.lift.b = {0.0, 1.0, 0.0};  // z1 z2
                break;
            }
            // normal form z (z + mu_i) / (mu_j z + 1); pick the multiplier
            // pair with the best-conditioned 1 - mu_i mu_j
            int bi = 0, bj = 1;
            double best = -1.0;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    if (i == j) continue;
                    double s = std::abs(1.0 - mu[i] * mu[j]);
                    if (s > best + 1e-12) {
                        best = s;
                        bi = i;
                        bj = j;
                    }
                }
            if (best < 1e-10)
                throw numeric_error("Mod2 parameter too close to the "
                                    "degenerate locus");
            m.lift.a = {0.0, mu[bi], 1.0};  // z1^2 + mu_i z1 z2
            m.lift.b = {1.0, mu[bj], 0.0};  // mu_j z1 z2 + z2^2
            break;
        }
    }
    finish_instance(m);
    return m;
}

RationalMapInstance instantiate(const FamilySpec& family, cplx lambda) {
    return instantiate(family, std::span<const cplx>(&lambda, 1));
}

std::vector<cplx> fixed_point_multipliers(const RationalMapInstance& m,
                                          bool* degenerate_flag) {
    if (m.deg != 2) throw numeric_error("fixed points: degree-2 maps only");
    // fixed points solve F1(z,1) - z F2(z,1) = 0; degree deficit counts
    // fixed points at infinity
    PolyC p = m.chart_num - PolyC::identity() * m.chart_den;
    double scale = std::max(m.chart_num.coeff_norm(), m.chart_den.coeff_norm());
    p.trim(1e-13 * scale);
    std::vector<cplx> mult;
    std::vector<cplx> finite_roots;
    if (p.degree() >= 1) finite_roots = roots(p, 1e-13);
    for (cplx z : finite_roots) mult.push_back(m.chart_derivative(z));
    int at_inf = 3 - static_cast<int>(finite_roots.size()) -
                 (p.degree() < 0 ? 3 : 0);
    for (int k = 0; k < at_inf; ++k) {
        // multiplier of w -> F2(1,w)/F1(1,w) at w = 0
        std::vector<cplx> ra(m.lift.a.rbegin(), m.lift.a.rend());
        std::vector<cplx> rb(m.lift.b.rbegin(), m.lift.b.rend());
        PolyC A{std::vector<cplx>(ra)}, B{std::vector<cplx>(rb)};
        cplx a, da, b, db;
        A.eval2(cplx(0.0), a, da);
        B.eval2(cplx(0.0), b, db);
        mult.push_back((db * a - b * da) / (a * a));
    }
    if (degenerate_flag) {
        *degenerate_flag = false;
        for (std::size_t i = 0; i < finite_roots.size(); ++i)
            for (std::size_t j = i + 1; j < finite_roots.size(); ++j)
                if (std::abs(finite_roots[i] - finite_roots[j]) <
                    1e-6 * (1.0 + std::abs(finite_roots[i])))
                    *degenerate_flag = true;
        if (at_inf > 1) *degenerate_flag = true;
    }
    std::sort(mult.begin(), mult.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return mult;
}

std::vector<C2> critical_factorization(const HomPair& F) {
    int d = F.degree();
    // det F'(z,1) as a polynomial; degree deficit = factors through [1:0]
    PolyC q = dehom(d_z1(F.a)) * dehom(d_z2(F.b)) -
              dehom(d_z2(F.a)) * dehom(d_z1(F.b));
    q.trim(1e-13 * q.coeff_norm());
    if (q.is_zero()) throw numeric_error("det F' identically zero");
    std::vector<cplx> finite = q.degree() >= 1 ? roots(q, 1e-12)
                                               : std::vector<cplx>{};
    int k = static_cast<int>(finite.size());
    int at_inf = 2 * d - 2 - k;
    // det F' = lead * (-1)^k * prod (r_j,1)^z * prod (1,0)^z; fold the
    // scalar into the factors as a common (2d-2)-th root, so the product
    // identity det F'(z) = prod c_j ^ z holds exactly
    cplx scalar = q.lead() * ((k % 2 == 0) ? 1.0 : -1.0);
    cplx t = std::pow(scalar, 1.0 / (2 * d - 2));
    std::vector<C2> out;
    out.reserve(2 * d - 2);
    for (cplx r : finite) out.push_back({t * r, t});
    for (int i = 0; i < at_inf; ++i) out.push_back({t, cplx(0.0)});
    return out;
}

LineCoeffs per1_line_mod2(cplx w) {
    return {w * w + 1.0, -w, -(w * w * w + 2.0)};
}

std::vector<C2> preimage_points(const RationalMapInstance& m, const C2& w) {
    // solve w2 F1(z,1) - w1 F2(z,1) = 0
    PolyC p = m.chart_num * PolyC::constant(w.y) -
              m.chart_den * PolyC::constant(w.x);
    double scale = std::max({m.chart_num.coeff_norm() * std::abs(w.y),
                             m.chart_den.coeff_norm() * std::abs(w.x),
                             1e-300});
    p.trim(1e-13 * scale);
    std::vector<C2> out;
    if (p.degree() >= 1)
        for (cplx z : roots(p, 1e-13))
            out.push_back(C2{z, 1.0}.normalized());
    while (static_cast<int>(out.size()) < m.deg)
        out.push_back({1.0, 0.0});  // preimages at infinity
    return out;
}

HomPair iterate_lift(const HomPair& F, int n) {
    HomPair G = F;
    auto normalize = [](HomPair& H) {
        double mx = 0.0;
        for (auto& c : H.a) mx = std::max(mx, std::abs(c));
        for (auto& c : H.b) mx = std::max(mx, std::abs(c));
        for (auto& c : H.a) c /= mx;
        for (auto& c : H.b) c /= mx;
    };
    normalize(G);
    for (int it = 1; it < n; ++it) {
        // F(G1, G2) via form products (same convolution as PolyC)
        PolyC g1{std::vector<cplx>(G.a)}, g2{std::vector<cplx>(G.b)};
        int d = F.degree();
        // powers of g1 and g2
        std::vector<PolyC> p1(d + 1), p2(d + 1);
        p1[0] = PolyC::constant(1.0);
        p2[0] = PolyC::constant(1.0);
        for (int i = 1; i <= d; ++i) {
            p1[i] = p1[i - 1] * g1;
            p2[i] = p2[i - 1] * g2;
        }
        int D = G.degree() * d;
        auto build = [&](const std::vector<cplx>& coef) {
            std::vector<cplx> acc(D + 1, cplx(0.0));
            for (int i = 0; i <= d; ++i) {
                if (coef[i] == cplx(0.0)) continue;
                PolyC term = p1[i] * p2[d - i];
                for (std::size_t j = 0; j < term.coeffs.size(); ++j)
                    acc[j] += coef[i] * term.coeffs[j];
            }
            return acc;
        };
        HomPair H;
        H.a = build(F.a);
        H.b = build(F.b);
        normalize(H);
        G = std::move(H);
    }
    return G;
}

}  // namespace holodyn
