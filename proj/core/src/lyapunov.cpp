#include "holodyn/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "holodyn/cycles.hpp"
#include "holodyn/green.hpp"
#include "holodyn/parallel.hpp"
#include "holodyn/polyalg.hpp"

namespace holodyn {

namespace {

LyapEstimate formula_from_poly(const PolyC& P, std::span<const cplx> crit,
                               double tol) {
    int d = P.degree();
    LyapEstimate est;
    est.method = LyapMethod::Formula;
    est.value = std::log(static_cast<double>(d));
    for (cplx c : crit) {
        GreenValue g = green_poly(P, c, tol);
        if (g.undecided)
            throw numeric_error("lyap_formula: green value undecided at a "
                                "critical point");
        est.value += g.value;
        est.error += g.error_bound;
    }
    return est;
}

}  // namespace

LyapEstimate lyap_formula(const FamilySpec& family,
                          std::span<const cplx> params, double tol) {
    auto m = instantiate(family, params);
    // both supported families come with explicit critical points: 0 for
    // z^2 + c, and {0, c_1, ..., c_{d-2}} for the (c, a) family
    std::vector<cplx> crit{cplx(0.0)};
    if (family.kind == FamilyKind::PolyCA)
        crit.insert(crit.end(), params.begin(), params.end() - 1);
    else if (family.kind != FamilyKind::Quadratic)
        return lyap_formula(m, tol);
    return formula_from_poly(m.chart, crit, tol);
}

LyapEstimate lyap_formula(const RationalMapInstance& m, double tol) {
    if (!m.polynomial) return lyap_demarco(m, tol);
    const PolyC& P = m.chart;
    auto crit = roots(P.derivative());
    return formula_from_poly(P, crit, tol);
}

LyapEstimate lyap_demarco(const RationalMapInstance& m, double tol) {
    LyapEstimate est;
    est.method = LyapMethod::Formula;
    double sum = 0.0;
    for (const C2& c : m.critical_lifts) {
        GreenValue g = green_lift(m, c, tol);
        sum += g.value;
        est.error += g.error_bound;
    }
    cplx res = resultant(m.lift);
    double ares = std::abs(res);
    if (!(ares > 0.0) || !std::isfinite(ares))
        throw numeric_error("lyap_demarco: vanishing resultant (degenerate "
                            "map)", ares);
    double d = static_cast<double>(m.deg);
    est.value = sum - (2.0 / d) * std::log(ares) - std::log(d);
    return est;
}

LyapEstimate lyap_cycles(const FamilySpec& family,
                         std::span<const cplx> params, int n_max) {
    if (n_max < 1) throw numeric_error("lyap_cycles: n_max >= 1");
    auto m = instantiate(family, params);
    double d = static_cast<double>(m.deg);

    // S_k = sum of ln|multiplier| over exact-period-k repelling cycles;
    // level n averages over all repelling fixed points of f^n, whose
    // exact periods run over the divisors of n
    std::vector<double> S(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (int k = 1; k <= n_max; ++k) {
        for (const CycleRecord& c : periodic_cycles(m, k)) {
            if (c.cls == CycleClass::Repelling)
                S[static_cast<std::size_t>(k)] +=
                    std::log(std::abs(c.multiplier));
        }
    }
    auto level = [&](int n) {
        double s = 0.0;
        for (std::uint64_t k : divisors(static_cast<std::uint64_t>(n)))
            s += S[static_cast<std::size_t>(k)];
        return s / std::pow(d, n);
    };
    LyapEstimate est;
    est.method = LyapMethod::Cycles;
    est.value = level(n_max);
    est.error = n_max > 1 ? std::abs(est.value - level(n_max - 1))
                          : std::abs(est.value);
    return est;
}

LyapEstimate lyap_birkhoff(const RationalMapInstance& m, int n_samples,
                           std::uint64_t seed, int workers) {
    if (n_samples < 2) throw numeric_error("lyap_birkhoff: n_samples >= 2");
    auto cloud = sample_green_measure(m, static_cast<std::size_t>(n_samples),
                                      64, seed);
    std::size_t n_raw = cloud.points.size();
    std::vector<double> logs(n_raw,
                             std::numeric_limits<double>::quiet_NaN());
    parallel_for(n_raw, workers, [&](std::size_t i) {
        double s = m.spherical_derivative(cloud.points[i]);
        // the integrand has log singularities at critical points; a sample
        // landing numerically on one carries no usable information
        if (s > 1e-24 && std::isfinite(s)) logs[i] = std::log(s);
    });
    logs.erase(std::remove_if(logs.begin(), logs.end(),
                              [](double v) { return std::isnan(v); }),
               logs.end());
    std::size_t n = logs.size();
    if (n < 2)
        throw numeric_error("lyap_birkhoff: all samples degenerate");
    double mean = 0.0;
    for (double v : logs) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : logs) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n - 1);

    LyapEstimate est;
    est.method = LyapMethod::Birkhoff;
    est.value = mean;
    est.error = 2.0 * std::sqrt(var / static_cast<double>(n));
    return est;
}

}  // namespace holodyn
