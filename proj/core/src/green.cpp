#include "holodyn/green.hpp"

#include <cmath>

#include "holodyn/parallel.hpp"
#include "holodyn/rng.hpp"

namespace holodyn {

GreenValue green_lift(const RationalMapInstance& m, const C2& z, double tol) {
    double n0 = z.norm();
    if (n0 <= 0.0 || !std::isfinite(n0))
        throw numeric_error("green_lift: zero or non-finite point");
    double lnM = m.log_distortion;
    int d = m.deg;
    GreenValue g;
    g.value = std::log(n0);
    C2 u = z.normalized();
    double dn = 1.0;  // d^{-k}
    int k = 0;
    // tail after k steps <= lnM / (d^k (d-1))
    while (lnM * dn / (d - 1) > tol && k < 512) {
        C2 v = m.apply(u);
        double nv = v.norm();
        if (nv <= 0.0 || !std::isfinite(nv))
            throw numeric_error("green_lift: degenerate orbit");
        dn /= d;
        g.value += dn * std::log(nv);
        u = {v.x / nv, v.y / nv};
        ++k;
    }
    g.iterations = k;
    g.error_bound = lnM * dn / (d - 1);
    return g;
}

double escape_radius(const PolyC& P) {
    // |z| >= R forces |P(z)| >= 2|z|
    double lead = std::abs(P.lead());
    double lower = 0.0;
    for (int i = 0; i < P.degree(); ++i) lower += std::abs(P.coeffs[i]);
    return std::max(1.0, (2.0 + lower) / lead);
}

GreenValue green_poly(const PolyC& P, cplx z, double tol, int iter_cap) {
    int d = P.degree();
    if (d < 2) throw numeric_error("green_poly: degree >= 2 required");
    double R = escape_radius(P);
    // once |z| > R, successive estimates d^{-n} ln|z_n| differ by at most
    // C d^{-(n+1)} with C bounding |ln(|P(z)|/|z|^d)|
    double C = std::abs(std::log(std::abs(P.lead()))) + std::log(4.0);
    GreenValue g;
    double mx = std::abs(z);
    double dn = 1.0;
    for (int n = 0; n < iter_cap; ++n) {
        double az = std::abs(z);
        mx = std::max(mx, az);
        if (!std::isfinite(az)) {
            g.undecided = true;
            g.iterations = n;
            g.max_modulus = mx;
            return g;
        }
        if (az > R) {
            // escaped: refine in log scale, z_k = exp(logz) * u with |u|=1
            double logz = std::log(az);
            cplx u = z / az;
            double log_lead = std::log(std::abs(P.lead()));
            double ratio = 0.0;  // sum |p_i| / |lead| over i < d
            for (int i = 0; i < d; ++i)
                ratio += std::abs(P.coeffs[i]) / std::abs(P.lead());
            int k = n;
            while (C * dn / (d - 1) > tol && k < iter_cap) {
                if (std::exp(-logz) * ratio < 1e-16) {
                    // lower-order terms are below double precision:
                    // P acts as lead * z^d from here on, so the limit
                    // d^{-k}(logz_k) telescopes in closed form
                    g.value = dn * (logz + log_lead / (d - 1));
                    g.iterations = k;
                    g.error_bound = dn * 1e-15;
                    g.max_modulus = mx;
                    return g;
                }
                // c = u^d P(z) / z^d = sum p_i u^i e^{(i-d) logz}, so
                // |c| = |P(z)/z^d| and the next unit direction is c/|c|
                cplx c(0.0), upow(1.0);
                for (int i = 0; i <= d; ++i) {
                    c += P.coeffs[i] * upow * std::exp((i - d) * logz);
                    upow *= u;
                }
                double ac = std::abs(c);
                logz = d * logz + std::log(ac);
                u = c / ac;
                dn /= d;
                ++k;
            }
            g.value = dn * logz;
            g.iterations = k;
            g.error_bound = C * dn / (d - 1);
            g.max_modulus = mx;
            if (g.error_bound > tol) g.undecided = true;
            return g;
        }
        z = P.eval(z);
        dn /= d;
    }
    // orbit certified bounded within the cap
    g.value = 0.0;
    g.iterations = iter_cap;
    g.error_bound = 0.0;
    g.max_modulus = mx;
    return g;
}

GreenValue green_poly(const FamilySpec& family, std::span<const cplx> params,
                      cplx z, double tol, int iter_cap) {
    auto m = instantiate(family, params);
    if (!m.polynomial)
        throw numeric_error("green_poly: polynomial family required");
    return green_poly(m.chart, z, tol, iter_cap);
}

SampleCloud sample_green_measure(const RationalMapInstance& m,
                                 std::size_t n_samples, int burn_in,
                                 std::uint64_t seed, const C2& start,
                                 int n_chains, int workers) {
    if (n_samples < 1) throw numeric_error("n_samples >= 1 required");
    // reject an exceptional starting point: a superattracting fixed point
    // whose full preimage is itself
    {
        C2 s = start.normalized();
        C2 fs = m.apply(s).normalized();
        if (sphere_dist(s, fs) < 1e-12 && m.spherical_derivative(s) < 1e-12) {
            bool all_self = true;
            for (const auto& p : preimage_points(m, s))
                if (sphere_dist(p, s) > 1e-9) all_self = false;
            if (all_self)
                throw numeric_error("exceptional starting point");
        }
    }
    if (workers <= 0) workers = default_workers();
    std::size_t per_chain = (n_samples + n_chains - 1) / n_chains;
    SampleCloud cloud;
    cloud.points.assign(n_samples, C2{});
    parallel_for(n_chains, workers, [&](std::size_t chain) {
        CounterRng rng(seed, chain);
        C2 z = start.normalized();
        std::uint64_t step = 0;
        for (int b = 0; b < burn_in; ++b, ++step) {
            auto pre = preimage_points(m, z);
            z = pre[rng.below(pre.size(), step)];
        }
        for (std::size_t i = 0; i < per_chain; ++i, ++step) {
            auto pre = preimage_points(m, z);
            z = pre[rng.below(pre.size(), step)];
            std::size_t slot = chain * per_chain + i;
            if (slot < n_samples) cloud.points[slot] = z;
        }
    });
    return cloud;
}

SampleCloud sample_green_measure(const RationalMapInstance& m,
                                 std::size_t n_samples, int burn_in,
                                 std::uint64_t seed) {
    return sample_green_measure(m, n_samples, burn_in, seed,
                                C2{cplx(0.5137, 0.2718), cplx(1.0)});
}

}  // namespace holodyn
