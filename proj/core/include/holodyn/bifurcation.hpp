#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "holodyn/lyapunov.hpp"
#include "holodyn/maps.hpp"

namespace holodyn {

// One complex axis discretized as a square res x res cell grid
struct GridAxis {
    cplx center{0.0};
    double halfw = 1.0;
    int res = 16;

    double h() const { return 2.0 * halfw / res; }
    cplx point(int ix, int iy) const {
        return center + cplx(-halfw + (ix + 0.5) * h(),
                             -halfw + (iy + 0.5) * h());
    }
};

// Cell-centered grid over 1 or 2 complex parameter axes. fixed_tail holds
// trailing parameters held constant (slices of higher-dimensional
// families). Cells are flattened with axis order (x1, y1[, x2, y2]),
// last index fastest.
struct ParamGrid {
    std::vector<GridAxis> axes;
    std::vector<cplx> fixed_tail;

    int dim() const { return static_cast<int>(axes.size()); }
    std::size_t cells() const;
    double cell_volume() const;  // Lebesgue measure of one cell

    void decode(std::size_t idx, int* ix, int* iy) const;  // per axis
    std::size_t encode(const int* ix, const int* iy) const;
    std::vector<cplx> params_at(std::size_t idx) const;
    void validate() const;  // res >= 16, halfw > 0, dim in {1,2}
};

struct ScalarField {
    ParamGrid grid;
    std::string label;
    std::vector<double> values;
    std::vector<unsigned char> flags;  // nonzero = undecided / failed cell

    std::size_t flagged_count() const;
};

struct DensityField {
    ParamGrid grid;
    std::vector<double> values;         // density per Lebesgue cell volume
    std::vector<unsigned char> valid;   // 0 at margins and flagged stencils
    double total_mass = 0.0;            // sum density * cell_volume (valid)
    double negative_mass_fraction = 0.0;
};

// Lyapunov exponent per cell. Formula is the closed-form route (critical
// Green sums for polynomial families, the lift formula otherwise); the
// other methods are available for cross-checks at low resolution.
ScalarField scan_L(const FamilySpec& family, const ParamGrid& grid,
                   LyapMethod method = LyapMethod::Formula, int workers = 0,
                   int iter_cap = 2048);

// Activity potential of the i-th marked critical point per cell
ScalarField scan_activity(const FamilySpec& family, const ParamGrid& grid,
                          int i, int workers = 0, int iter_cap = 2048);

// Averaged multiplier potential at level n and radius r:
//   d^{-n} sum over exact-period-n cycles of ln max(|w|, r).
ScalarField scan_Lnr(const FamilySpec& family, const ParamGrid& grid, int n,
                     double r, int workers = 0);

// 1 inside the quadratic connectedness locus (orbit of 0 stays within
// radius 2 through max_iter steps), 0 outside
ScalarField mandelbrot_mask(const ParamGrid& grid, int max_iter = 512,
                            int workers = 0);

// Discrete dd^c of a 1-dimensional field: five-point Laplacian / (2 pi),
// so that ln|lambda - lambda0| carries total mass 1. One-cell margin and
// flagged stencils excluded.
DensityField ddc_density(const ScalarField& field, int workers = 0);

// Separable [1,2,1]/4 smoothing applied `passes` times along every grid
// axis. Mollifies potentials whose distributional Hessians live on fractal
// supports before wedge products are formed; flagged cells are left in
// place and poison their stencils as usual.
void smooth_field(ScalarField& field, int passes);

// Discrete mixed Monge-Ampere density of two 2-dimensional fields:
//   (4/pi^2) [u_11 v_22 + u_22 v_11 - 2 Re(u_12 conj(v_12))]
// with complex Hessian entries from centered Wirtinger differences.
DensityField wedge_density(const ScalarField& u, const ScalarField& v,
                           int workers = 0);

// Total-variation distance between the grid-binned weighted point set and
// the positively-truncated, renormalized density. Empty weights = uniform.
double empirical_vs_density(std::span<const cplx> points,
                            std::span<const double> weights,
                            const DensityField& density);

}  // namespace holodyn
