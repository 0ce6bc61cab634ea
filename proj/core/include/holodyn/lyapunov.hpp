#pragma once

#include <cstdint>
#include <span>

#include "holodyn/maps.hpp"

namespace holodyn {

enum class LyapMethod { Formula, Cycles, Birkhoff };

struct LyapEstimate {
    double value = 0.0;
    LyapMethod method = LyapMethod::Formula;
    double error = 0.0;  // heuristic bound / diagnostic, see each estimator
};

// Critical-point formula, polynomial families only:
//   L = ln d + sum over finite critical points of g(c).
LyapEstimate lyap_formula(const FamilySpec& family, std::span<const cplx> params,
                          double tol = 1e-12);
LyapEstimate lyap_formula(const RationalMapInstance& m, double tol = 1e-12);

// Homogeneous-lift formula, any family:
//   L + ln d = sum_j G_F(chat_j) - (2/d) ln|Res F|.
LyapEstimate lyap_demarco(const RationalMapInstance& m, double tol = 1e-12);

// Repelling-cycle approximation at level n:
//   L_n = d^{-n} * sum over repelling fixed points of f^n of ln|multiplier|,
// i.e. exact periods run over the divisors of n. error = |L_n - L_{n-1}|.
LyapEstimate lyap_cycles(const FamilySpec& family, std::span<const cplx> params,
                         int n_max);

// Monte-Carlo Birkhoff average of the logarithmic spherical derivative over
// equilibrium-measure samples. error = two standard errors of the mean.
LyapEstimate lyap_birkhoff(const RationalMapInstance& m, int n_samples,
                           std::uint64_t seed, int workers = 0);

}  // namespace holodyn
