#pragma once

#include <span>
#include <vector>

#include "holodyn/polyalg.hpp"

namespace holodyn {

// point in C^2 (a lift of a point on the sphere when nonzero)
struct C2 {
    cplx x{0.0}, y{0.0};
    double norm() const;
    C2 normalized() const;
};

// wedge c ^ z = c.x * z.y - c.y * z.x; vanishes iff c and z are parallel
cplx wedge(const C2& c, const C2& z);

// chordal distance |z ^ w| / (|z||w|) between the projected points
double sphere_dist(const C2& z, const C2& w);

enum class FamilyKind { Quadratic, PolyCA, Mod2 };

struct FamilySpec {
    FamilyKind kind = FamilyKind::Quadratic;
    int degree = 2;  // map degree; >= 3 only for PolyCA

    int param_dim() const {
        switch (kind) {
            case FamilyKind::Quadratic: return 1;
            case FamilyKind::PolyCA: return degree - 1;
            case FamilyKind::Mod2: return 2;
        }
        return 0;
    }

    static FamilySpec quadratic() { return {FamilyKind::Quadratic, 2}; }
    static FamilySpec polyca(int d) { return {FamilyKind::PolyCA, d}; }
    static FamilySpec mod2() { return {FamilyKind::Mod2, 2}; }
};

// One concrete map: its lift, chart numerator/denominator, critical data.
// Immutable after construction and safe to share across threads.
struct RationalMapInstance {
    FamilySpec family;
    std::vector<cplx> params;

    HomPair lift;
    int deg = 2;
    PolyC chart_num;  // F1(z,1)
    PolyC chart_den;  // F2(z,1)
    bool polynomial = false;  // true when F2 = const * z2^d
    PolyC chart;              // = chart_num / const when polynomial

    std::vector<C2> critical_lifts;  // 2d-2 factors of det F'
    double log_distortion = 0.0;     // ln M with 1/M <= |F| <= M on |z|=1

    C2 apply(const C2& z) const;
    cplx det_jacobian(const C2& z) const;  // det F'(z)
    double spherical_derivative(const C2& z) const;

    // f in the standard chart; only valid away from poles
    cplx chart_value(cplx z) const;
    cplx chart_derivative(cplx z) const;
};

RationalMapInstance instantiate(const FamilySpec& family,
                                std::span<const cplx> params);

// convenience for one-parameter families
RationalMapInstance instantiate(const FamilySpec& family, cplx lambda);

// multipliers of the three fixed points of a degree-2 map, with
// multiplicity, ordered by (re, im); *degenerate_flag reports a
// multiple fixed point when non-null
std::vector<cplx> fixed_point_multipliers(const RationalMapInstance& m,
                                          bool* degenerate_flag = nullptr);

// The 2d-2 lifted critical points with det F'(z) = prod_j (c_j ^ z).
// The scalar factor is spread over the factors as a common root, so the
// product identity holds coefficient-wise.
std::vector<C2> critical_factorization(const HomPair& F);

// multipliers of the (sorted) solutions of the Mod_2 multiplier cubic
// X^3 - s1 X^2 + s2 X - (s1 - 2)
std::vector<cplx> mod2_multipliers(cplx sigma1, cplx sigma2);

// Per_1(w) in Milnor coordinates: A*l1 + B*l2 + C = 0
struct LineCoeffs {
    cplx A, B, C;
};
LineCoeffs per1_line_mod2(cplx w);

// all d preimages of the point [w] as unit lifts, with multiplicity
std::vector<C2> preimage_points(const RationalMapInstance& m, const C2& w);

// lift of the n-th iterate, rescaled to unit max coefficient each step
HomPair iterate_lift(const HomPair& F, int n);

}  // namespace holodyn
