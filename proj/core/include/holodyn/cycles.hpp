#pragma once

#include <cstdint>
#include <vector>

#include "holodyn/maps.hpp"

namespace holodyn {

// nu_d(n) = sum_{k|n} mu(n/k) d^k, the dynatomic degree
long long dynatomic_degree(int d, int n);

// N_d(n) = nu_d(n) / n, the number of exact-period-n cycles
long long cycle_count(int d, int n);

struct DynatomicPoly {
    int n = 1;
    PolyC poly;
    long long nu = 0;
};

// Phi*_n as an explicit coefficient vector, by the Moebius product of the
// iterate polynomials with exact division. Coefficient growth limits this
// to moderate n (degree-2 maps: n <= 8 over the usual parameter ranges);
// the cycle solver below never expands coefficients.
DynatomicPoly dynatomic(const RationalMapInstance& m, int n);

enum class CycleClass { Repelling, Attracting, Neutral };

struct CycleRecord {
    int period = 1;
    cplx representative{0.0};  // chart value of one orbit point
    bool at_infinity = false;
    cplx multiplier{0.0};
    CycleClass cls = CycleClass::Repelling;
};

// All cycles of exact period n. Polynomial maps: roots of Phi*_n found by
// evaluation-based simultaneous iteration. Other rational maps: fixed
// points of the iterated lift, filtered by exact period.
std::vector<CycleRecord> periodic_cycles(const RationalMapInstance& m, int n,
                                         double tol = 1e-7);

struct MultiplierSpectrum {
    std::vector<cplx> params;
    int n = 1;
    std::vector<cplx> multipliers;  // one per cycle, sorted by (re, im)
    bool collision_flagged = false;
};

MultiplierSpectrum multiplier_spectrum(const FamilySpec& family,
                                       std::span<const cplx> params, int n);

// d^{-n} * sum of ln|w| over the exact-period-n repelling cycles
double lyap_spectrum_average(const FamilySpec& family,
                             std::span<const cplx> params, int n);

// Quadratic family: all c with a superattracting cycle of exact period n
// (the hyperbolic-component centers), by the evaluation-based solver on
// the dynamical recurrence. n <= 14.
std::vector<cplx> per_n_centers(int n);

struct ContinuationResult {
    std::vector<cplx> params;       // solved Per_n(w) parameters
    std::vector<cplx> failed_from;  // centers whose continuation diverged
};

// Quadratic family: Per_n(w) parameters by Newton continuation from the
// period-n centers, following w from 0 along a straight segment.
ContinuationResult per_n_w(int n, cplx w, int steps = 32);

}  // namespace holodyn
