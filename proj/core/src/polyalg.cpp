#include "holodyn/polyalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace holodyn {

void PolyC::trim(double tol) {
    while (!coeffs.empty() && std::abs(coeffs.back()) <= tol)
        coeffs.pop_back();
}

double PolyC::coeff_norm() const {
    double m = 0.0;
    for (const auto& c : coeffs) m = std::max(m, std::abs(c));
    return m;
}

cplx PolyC::eval(cplx z) const {
    cplx v(0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        v = v * z + *it;
    return v;
}

void PolyC::eval2(cplx z, cplx& value, cplx& deriv) const {
    cplx v(0.0), d(0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        d = d * z + v;
        v = v * z + *it;
    }
    value = v;
    deriv = d;
}

PolyC PolyC::derivative() const {
    if (coeffs.size() <= 1) return PolyC();
    std::vector<cplx> d(coeffs.size() - 1);
    for (std::size_t i = 1; i < coeffs.size(); ++i)
        d[i - 1] = coeffs[i] * static_cast<double>(i);
    return PolyC(std::move(d));
}

PolyC PolyC::compose(const PolyC& inner) const {
    PolyC r;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        r = r * inner + PolyC::constant(*it);
    return r;
}

PolyC operator+(const PolyC& a, const PolyC& b) {
    std::vector<cplx> c(std::max(a.coeffs.size(), b.coeffs.size()), cplx(0.0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) c[i] += a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) c[i] += b.coeffs[i];
    return PolyC(std::move(c));
}

PolyC operator-(const PolyC& a, const PolyC& b) {
    std::vector<cplx> c(std::max(a.coeffs.size(), b.coeffs.size()), cplx(0.0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) c[i] += a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) c[i] -= b.coeffs[i];
    return PolyC(std::move(c));
}

PolyC operator*(const PolyC& a, const PolyC& b) {
    if (a.is_zero() || b.is_zero()) return PolyC();
    std::vector<cplx> c(a.coeffs.size() + b.coeffs.size() - 1, cplx(0.0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            c[i + j] += a.coeffs[i] * b.coeffs[j];
    return PolyC(std::move(c));
}

PolyC& PolyC::operator*=(cplx s) {
    for (auto& c : coeffs) c *= s;
    trim();
    return *this;
}

void divrem(const PolyC& num, const PolyC& den, PolyC& q, PolyC& r) {
    if (den.is_zero()) throw numeric_error("division by zero polynomial");
    r = num;
    if (num.degree() < den.degree()) {
        q = PolyC();
        return;
    }
    std::vector<cplx> qc(num.degree() - den.degree() + 1, cplx(0.0));
    cplx dl = den.lead();
    for (int k = num.degree() - den.degree(); k >= 0; --k) {
        cplx f = r.coeffs[k + den.degree()] / dl;
        qc[k] = f;
        for (int i = 0; i <= den.degree(); ++i)
            r.coeffs[k + i] -= f * den.coeffs[i];
        r.coeffs.resize(k + den.degree());
    }
    q = PolyC(std::move(qc));
    r.trim(0.0);
}

PolyC divide_exact(const PolyC& num, const PolyC& den, double tol,
                   double* rem_norm) {
    PolyC q, r;
    divrem(num, den, q, r);
    double rn = r.coeff_norm();
    if (rem_norm) *rem_norm = rn;
    if (rn > tol * std::max(num.coeff_norm(), 1e-300))
        throw numeric_error("not divisible: remainder norm " +
                                std::to_string(rn),
                            rn);
    return q;
}

int mobius(std::uint64_t n) {
    int primes = 0;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            ++primes;
        }
    }
    if (n > 1) ++primes;
    return (primes % 2 == 0) ? 1 : -1;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

namespace {

// Fujiwara root bound: 2 * max_k |a_{n-k}/a_n|^{1/k}
double fujiwara_bound(const PolyC& p) {
    int n = p.degree();
    double an = std::abs(p.lead());
    double bound = 0.0;
    for (int k = 1; k <= n; ++k) {
        double ak = std::abs(p.coeffs[n - k]);
        if (ak == 0.0) continue;
        bound = std::max(bound, std::pow(ak / an, 1.0 / k));
    }
    return 2.0 * std::max(bound, 1e-30);
}

std::vector<cplx> initial_circle(int n, double radius) {
    std::vector<cplx> z(n);
    const double two_pi = 6.283185307179586476925286766559;
    for (int i = 0; i < n; ++i) {
        // irrational offset keeps guesses off the axes and root symmetries
        double theta = two_pi * (i + 0.37363521) / n + 0.5 / n;
        z[i] = std::polar(radius * (1.0 + 1e-3 * std::cos(7.1 * i)), theta);
    }
    return z;
}

std::vector<cplx> aberth(const std::function<void(cplx, cplx&, cplx&)>& eval2,
                         int degree, double radius, double tol,
                         int max_iter) {
    std::vector<cplx> z = initial_circle(degree, radius);
    double worst = 0.0;
    auto converged = [&](cplx w) {
        cplx v, d;
        eval2(w, v, d);
        double step = std::abs(v) / std::max(std::abs(d), 1e-300);
        return step <= tol * (1.0 + std::abs(w));
    };
    // one batch of coupled sweeps; returns the straggler count
    auto sweep = [&](int iters) {
        int bad = 0;
        for (int iter = 0; iter < iters; ++iter) {
            bad = 0;
            worst = 0.0;
            for (int i = 0; i < degree; ++i) {
                cplx v, d;
                eval2(z[i], v, d);
                double step = std::abs(v) / std::max(std::abs(d), 1e-300);
                double scale = 1.0 + std::abs(z[i]);
                if (step > tol * scale) ++bad;
                worst = std::max(worst, step / scale);
                if (step == 0.0) continue;
                cplx newton = v / d;
                cplx sum(0.0);
                for (int j = 0; j < degree; ++j) {
                    if (j == i) continue;
                    cplx diff = z[i] - z[j];
                    if (std::abs(diff) < 1e-300)
                        diff = cplx(1e-300, 0.0);
                    sum += 1.0 / diff;
                }
                cplx denom = 1.0 - newton * sum;
                if (std::abs(denom) < 1e-300) denom = cplx(1e-300, 0.0);
                z[i] -= newton / denom;
                if (!std::isfinite(z[i].real()) ||
                    !std::isfinite(z[i].imag()))
                    z[i] = initial_circle(degree, radius * 1.37)[i];
            }
            if (bad == 0) break;
        }
        return bad;
    };
    int bad = sweep(max_iter);
    if (bad == 0) return z;
    // roots of high-degree factors cluster on small sets, and the Newton
    // field far from the cluster moves points by only distance/degree per
    // step, so a handful of walkers can fail to land within the budget.
    // Unclaimed roots sit interlaced among the claimed ones, so reseeding
    // each straggler next to a randomly chosen settled point lets the
    // pairwise repulsion push it into the nearby gap.
    if (bad <= std::max(4, degree / 4)) {
        std::uint64_t s = 0x9e3779b97f4a7c15ull ^
                          static_cast<std::uint64_t>(degree);
        auto rnd = [&s]() {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            return static_cast<double>(s >> 11) / 9007199254740992.0;
        };
        for (int round = 0; round < 10 && bad > 0; ++round) {
            for (int i = 0; i < degree; ++i) {
                if (converged(z[i])) continue;
                int j = static_cast<int>(rnd() * degree) % degree;
                double off = std::pow(10.0, -2.0 - 2.0 * rnd());
                z[i] = z[j] + std::polar(off * (1.0 + std::abs(z[j])),
                                         6.283185307179586 * rnd());
            }
            bad = sweep(400);
        }
        if (bad == 0) {
            // reject configurations where two points share one root
            bool distinct = true;
            for (int i = 0; i < degree && distinct; ++i)
                for (int j = i + 1; j < degree; ++j)
                    if (std::abs(z[i] - z[j]) <
                        1e-9 * (1.0 + std::abs(z[i]))) {
                        distinct = false;
                        break;
                    }
            if (distinct) return z;
        }
    }
    throw numeric_error("root finder did not converge", worst);
}

}  // namespace

std::vector<cplx> roots(const PolyC& p, double tol) {
    if (p.degree() < 1)
        throw numeric_error("roots of constant polynomial");
    PolyC q = p;
    std::vector<cplx> out;
    // deflate exact zero roots
    std::size_t nz = 0;
    while (nz < q.coeffs.size() - 1 && q.coeffs[nz] == cplx(0.0)) ++nz;
    if (nz > 0) {
        out.assign(nz, cplx(0.0));
        q.coeffs.erase(q.coeffs.begin(), q.coeffs.begin() + nz);
    }
    int n = q.degree();
    if (n == 0) return out;
    if (n == 1) {
        out.push_back(-q.coeffs[0] / q.coeffs[1]);
        return out;
    }
    auto ev = [&q](cplx z, cplx& v, cplx& d) { q.eval2(z, v, d); };
    auto rs = aberth(ev, n, 0.8 * fujiwara_bound(q), tol, 400);
    out.insert(out.end(), rs.begin(), rs.end());
    return out;
}

std::vector<cplx> roots_by_evaluation(
    const std::function<void(cplx, cplx&, cplx&)>& eval2, int degree,
    double radius, double tol) {
    if (degree < 1) throw numeric_error("roots of constant polynomial");
    // large clustered configurations migrate slowly before convergence
    // kicks in, so the sweep budget grows with the degree; an occasional
    // starting circle puts a guess near a pole of the Newton field and
    // stalls a handful of points, so failed sweeps restart from shifted
    // radii with a larger budget
    const double scales[] = {1.0, 1.19, 0.83};
    for (int attempt = 0; attempt < 3; ++attempt) {
        try {
            int budget = (600 + degree) * (attempt == 0 ? 1 : 2);
            return aberth(eval2, degree, radius * scales[attempt], tol,
                          budget);
        } catch (const numeric_error&) {
            if (attempt == 2) throw;
        }
    }
    throw numeric_error("root finder did not converge");
}

cplx HomPair::eval_a(cplx z1, cplx z2) const {
    cplx v(0.0);
    cplx p1(1.0);
    std::vector<cplx> pw1(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        pw1[i] = p1;
        p1 *= z1;
    }
    cplx p2(1.0);
    for (int i = degree(); i >= 0; --i) {
        v += a[i] * pw1[i] * p2;
        p2 *= z2;
    }
    return v;
}

cplx HomPair::eval_b(cplx z1, cplx z2) const {
    cplx v(0.0);
    cplx p1(1.0);
    std::vector<cplx> pw1(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        pw1[i] = p1;
        p1 *= z1;
    }
    cplx p2(1.0);
    for (int i = degree(); i >= 0; --i) {
        v += b[i] * pw1[i] * p2;
        p2 *= z2;
    }
    return v;
}

namespace {

// determinant by Gaussian elimination with partial pivoting
cplx determinant(std::vector<cplx>& m, int n) {
    cplx det(1.0);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::abs(m[col * n + col]);
        for (int r = col + 1; r < n; ++r) {
            double v = std::abs(m[r * n + col]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) return cplx(0.0);
        if (piv != col) {
            for (int c = 0; c < n; ++c)
                std::swap(m[piv * n + c], m[col * n + c]);
            det = -det;
        }
        cplx p = m[col * n + col];
        det *= p;
        for (int r = col + 1; r < n; ++r) {
            cplx f = m[r * n + col] / p;
            if (f == cplx(0.0)) continue;
            for (int c = col; c < n; ++c) m[r * n + c] -= f * m[col * n + c];
        }
    }
    return det;
}

// Sylvester determinant of two formal degree-d coefficient rows
// (ascending in the z1 power).
cplx sylvester_det(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    int d = static_cast<int>(a.size()) - 1;
    int n = 2 * d;
    std::vector<cplx> m(static_cast<std::size_t>(n) * n, cplx(0.0));
    for (int r = 0; r < d; ++r)
        for (int i = 0; i <= d; ++i)
            m[r * n + r + i] = a[d - i];
    for (int r = 0; r < d; ++r)
        for (int i = 0; i <= d; ++i)
            m[(d + r) * n + r + i] = b[d - i];
    return determinant(m, n);
}

}  // namespace

cplx resultant(const HomPair& F) {
    int d = F.degree();
    cplx raw = sylvester_det(F.a, F.b);
    // only the anchor Res(z1^d, z2^d) = 1 is normative; correct the
    // row-order sign once per degree against it
    std::vector<cplx> ea(d + 1, cplx(0.0)), eb(d + 1, cplx(0.0));
    ea[d] = 1.0;  // z1^d
    eb[0] = 1.0;  // z2^d
    cplx anchor = sylvester_det(ea, eb);
    return raw / anchor;
}

}  // namespace holodyn
