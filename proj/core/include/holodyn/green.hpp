#pragma once

#include <cstdint>
#include <vector>

#include "holodyn/maps.hpp"

namespace holodyn {

struct GreenValue {
    double value = 0.0;
    int iterations = 0;
    double error_bound = 0.0;
    bool undecided = false;   // escape/bounded could not be certified
    double max_modulus = 0.0;  // largest |z| seen (polynomial case)
};

// G_F(z) = lim d^{-n} ln |F^n(z)|, by renormalized iteration; the tail
// after n steps is bounded by ln(M) / (d^n (d-1)).
GreenValue green_lift(const RationalMapInstance& m, const C2& z, double tol);

// g(z) = lim d^{-n} ln+ |P^n(z)| for a polynomial (chart) map.
// Returns exactly 0 when the orbit stays below the escape radius for the
// whole iteration cap.
GreenValue green_poly(const PolyC& P, cplx z, double tol,
                      int iter_cap = 4096);

GreenValue green_poly(const FamilySpec& family, std::span<const cplx> params,
                      cplx z, double tol, int iter_cap = 4096);

// escape radius R such that |z| > R certifies escape to infinity
double escape_radius(const PolyC& P);

struct SampleCloud {
    std::vector<C2> points;  // unit-norm lifts, uniform weights
};

// Empirical Green measure by random backward iteration: independent
// chains, one uniformly random preimage choice per step, burn_in steps
// discarded per chain. Deterministic given the seed; ordering is fixed
// by (chain, step) so the result does not depend on the worker count.
SampleCloud sample_green_measure(const RationalMapInstance& m,
                                 std::size_t n_samples, int burn_in,
                                 std::uint64_t seed, const C2& start,
                                 int n_chains = 8, int workers = 0);

SampleCloud sample_green_measure(const RationalMapInstance& m,
                                 std::size_t n_samples, int burn_in,
                                 std::uint64_t seed);

}  // namespace holodyn
