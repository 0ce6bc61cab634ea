#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace holodyn {

using cplx = std::complex<double>;

// Thrown on numeric failures (non-convergence, failed divisibility, ...);
// carries the offending residual so callers can report it.
class numeric_error : public std::runtime_error {
  public:
    numeric_error(const std::string& what, double residual = 0.0)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

  private:
    double residual_;
};

// Dense univariate polynomial over C, coefficients in ascending degree.
// The zero polynomial is the empty coefficient vector; otherwise the
// leading coefficient is nonzero after trim().
struct PolyC {
    std::vector<cplx> coeffs;

    PolyC() = default;
    explicit PolyC(std::vector<cplx> c) : coeffs(std::move(c)) { trim(); }
    static PolyC constant(cplx c) { return PolyC({c}); }
    static PolyC identity() { return PolyC({cplx(0.0), cplx(1.0)}); }

    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    cplx lead() const { return coeffs.back(); }
    double coeff_norm() const;  // max |coeff|

    void trim(double tol = 0.0);

    cplx eval(cplx z) const;  // Horner
    // value and derivative in one pass
    void eval2(cplx z, cplx& value, cplx& deriv) const;

    PolyC derivative() const;
    PolyC compose(const PolyC& inner) const;

    friend PolyC operator+(const PolyC& a, const PolyC& b);
    friend PolyC operator-(const PolyC& a, const PolyC& b);
    friend PolyC operator*(const PolyC& a, const PolyC& b);
    PolyC& operator*=(cplx s);
};

// Long division: num = q*den + r.
void divrem(const PolyC& num, const PolyC& den, PolyC& q, PolyC& r);

// Exact division; fails with numeric_error when the remainder max-norm
// exceeds tol * max-norm(num). On success *rem_norm (if given) receives
// the discarded remainder norm.
PolyC divide_exact(const PolyC& num, const PolyC& den, double tol = 1e-9,
                   double* rem_norm = nullptr);

// Classical Moebius function.
int mobius(std::uint64_t n);

std::vector<std::uint64_t> divisors(std::uint64_t n);

// All roots (with multiplicity, clustered) by Aberth-Ehrlich simultaneous
// iteration; deterministic initial guesses on a perturbed circle sized by
// the Fujiwara bound. Fails with numeric_error on non-convergence.
std::vector<cplx> roots(const PolyC& p, double tol = 1e-12);

// Evaluation-based Aberth-Ehrlich: finds the `degree` roots of a
// polynomial given only a (value, derivative) evaluator. Used where
// expanding coefficients would be numerically hopeless (e.g. the
// degree-2^{n-1} center equations). Guesses start on a perturbed circle
// of radius `radius`.
std::vector<cplx> roots_by_evaluation(
    const std::function<void(cplx, cplx&, cplx&)>& eval2, int degree,
    double radius, double tol = 1e-12);

// A pair of degree-d binary forms
//   F(z1,z2) = (sum a_i z1^i z2^{d-i}, sum b_i z1^i z2^{d-i}),
// the lift of a rational map when non-degenerate.
struct HomPair {
    std::vector<cplx> a;  // size d+1, index = power of z1
    std::vector<cplx> b;
    int degree() const { return static_cast<int>(a.size()) - 1; }

    cplx eval_a(cplx z1, cplx z2) const;
    cplx eval_b(cplx z1, cplx z2) const;
};

// Sylvester resultant of the pair, normalized so that
// Res(z1^d, z2^d) = 1 exactly. Zero return means a degenerate pair.
cplx resultant(const HomPair& F);

}  // namespace holodyn
