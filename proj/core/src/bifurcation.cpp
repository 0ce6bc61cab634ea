#include "holodyn/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "holodyn/cycles.hpp"
#include "holodyn/green.hpp"
#include "holodyn/parallel.hpp"

namespace holodyn {

std::size_t ParamGrid::cells() const {
    std::size_t n = 1;
    for (const GridAxis& a : axes)
        n *= static_cast<std::size_t>(a.res) * a.res;
    return n;
}

double ParamGrid::cell_volume() const {
    double v = 1.0;
    for (const GridAxis& a : axes) v *= a.h() * a.h();
    return v;
}

void ParamGrid::decode(std::size_t idx, int* ix, int* iy) const {
    for (int a = dim() - 1; a >= 0; --a) {
        int r = axes[static_cast<std::size_t>(a)].res;
        iy[a] = static_cast<int>(idx % r);
        idx /= r;
        ix[a] = static_cast<int>(idx % r);
        idx /= r;
    }
}

std::size_t ParamGrid::encode(const int* ix, const int* iy) const {
    std::size_t idx = 0;
    for (int a = 0; a < dim(); ++a) {
        int r = axes[static_cast<std::size_t>(a)].res;
        idx = (idx * r + static_cast<std::size_t>(ix[a])) * r +
              static_cast<std::size_t>(iy[a]);
    }
    return idx;
}

std::vector<cplx> ParamGrid::params_at(std::size_t idx) const {
    int ix[2] = {0, 0}, iy[2] = {0, 0};
    decode(idx, ix, iy);
    std::vector<cplx> p;
    p.reserve(axes.size() + fixed_tail.size());
    for (int a = 0; a < dim(); ++a)
        p.push_back(axes[static_cast<std::size_t>(a)].point(ix[a], iy[a]));
    p.insert(p.end(), fixed_tail.begin(), fixed_tail.end());
    return p;
}

void ParamGrid::validate() const {
    if (dim() < 1 || dim() > 2)
        throw numeric_error("grid: complex dimension must be 1 or 2");
    for (const GridAxis& a : axes) {
        if (a.res < 16) throw numeric_error("grid: resolution >= 16");
        if (!(a.halfw > 0.0)) throw numeric_error("grid: half-width > 0");
    }
}

std::size_t ScalarField::flagged_count() const {
    std::size_t n = 0;
    for (unsigned char f : flags) n += (f != 0);
    return n;
}

namespace {

void check_family_grid(const FamilySpec& family, const ParamGrid& grid) {
    grid.validate();
    int need = family.param_dim();
    int have = grid.dim() + static_cast<int>(grid.fixed_tail.size());
    if (need != have)
        throw numeric_error("grid: parameter count mismatch with family");
}

// chart polynomial and finite critical points, without the full instance
// machinery (no lift factorization); polynomial families only
bool family_poly(const FamilySpec& family, std::span<const cplx> params,
                 PolyC& P, std::vector<cplx>& crit) {
    if (family.kind == FamilyKind::Quadratic) {
        P = PolyC({params[0], cplx(0.0), cplx(1.0)});
        crit.assign(1, cplx(0.0));
        return true;
    }
    if (family.kind == FamilyKind::PolyCA) {
        int d = family.degree;
        std::size_t nc = static_cast<std::size_t>(d) - 2;
        // elementary symmetric functions of c_1..c_{d-2}
        std::vector<cplx> sig(nc + 1, cplx(0.0));
        sig[0] = cplx(1.0);
        for (std::size_t i = 0; i < nc; ++i)
            for (std::size_t m = i + 1; m >= 1; --m)
                sig[m] += params[i] * sig[m - 1];
        cplx a = params[nc];
        std::vector<cplx> co(static_cast<std::size_t>(d) + 1, cplx(0.0));
        co[0] = std::pow(a, d);
        for (int j = 2; j <= d - 1; ++j) {
            double s = ((d - j) % 2 == 0) ? 1.0 : -1.0;
            co[static_cast<std::size_t>(j)] =
                (s / j) * sig[static_cast<std::size_t>(d - j)];
        }
        co[static_cast<std::size_t>(d)] = cplx(1.0 / d);
        P = PolyC(std::move(co));
        crit.assign(1, cplx(0.0));
        crit.insert(crit.end(), params.begin(), params.end() - 1);
        return true;
    }
    return false;
}

ScalarField make_field(const ParamGrid& grid, std::string label) {
    ScalarField f;
    f.grid = grid;
    f.label = std::move(label);
    f.values.assign(grid.cells(), 0.0);
    f.flags.assign(grid.cells(), 0);
    return f;
}

DensityField make_density(const ParamGrid& grid) {
    DensityField d;
    d.grid = grid;
    d.values.assign(grid.cells(), 0.0);
    d.valid.assign(grid.cells(), 0);
    return d;
}

void finish_density(DensityField& d) {
    double vol = d.grid.cell_volume();
    double pos = 0.0, neg = 0.0;
    for (std::size_t i = 0; i < d.values.size(); ++i) {
        if (!d.valid[i]) continue;
        double m = d.values[i] * vol;
        if (m >= 0.0)
            pos += m;
        else
            neg -= m;
    }
    d.total_mass = pos - neg;
    double tot = pos + neg;
    d.negative_mass_fraction = tot > 0.0 ? neg / tot : 0.0;
}

}  // namespace

ScalarField scan_L(const FamilySpec& family, const ParamGrid& grid,
                   LyapMethod method, int workers, int iter_cap) {
    check_family_grid(family, grid);
    ScalarField out = make_field(grid, "L");
    double logd = std::log(static_cast<double>(family.degree));
    parallel_for(grid.cells(), workers, [&](std::size_t idx) {
        auto params = grid.params_at(idx);
        try {
            if (method == LyapMethod::Cycles) {
                out.values[idx] = lyap_cycles(family, params, 6).value;
                return;
            }
            if (method == LyapMethod::Birkhoff) {
                auto m = instantiate(family, params);
                out.values[idx] = lyap_birkhoff(m, 2000, 1, 1).value;
                return;
            }
            PolyC P;
            std::vector<cplx> crit;
            if (family_poly(family, params, P, crit)) {
                double L = logd;
                bool undecided = false;
                for (cplx c : crit) {
                    GreenValue g = green_poly(P, c, 1e-12, iter_cap);
                    L += g.value;
                    undecided |= g.undecided;
                }
                out.values[idx] = L;
                out.flags[idx] = undecided ? 1 : 0;
            } else {
                auto m = instantiate(family, params);
                out.values[idx] = lyap_formula(m).value;
            }
        } catch (const numeric_error&) {
            out.flags[idx] = 1;
        }
    });
    return out;
}

ScalarField scan_activity(const FamilySpec& family, const ParamGrid& grid,
                          int i, int workers, int iter_cap) {
    check_family_grid(family, grid);
    ScalarField out = make_field(grid, "g_c_" + std::to_string(i));
    parallel_for(grid.cells(), workers, [&](std::size_t idx) {
        auto params = grid.params_at(idx);
        try {
            PolyC P;
            std::vector<cplx> crit;
            if (family_poly(family, params, P, crit)) {
                if (i < 0 || i >= static_cast<int>(crit.size()))
                    throw numeric_error("scan_activity: bad index");
                GreenValue g = green_poly(
                    P, crit[static_cast<std::size_t>(i)], 1e-12, iter_cap);
                out.values[idx] = g.value;
                out.flags[idx] = g.undecided ? 1 : 0;
            } else {
                auto m = instantiate(family, params);
                if (i < 0 ||
                    i >= static_cast<int>(m.critical_lifts.size()))
                    throw numeric_error("scan_activity: bad index");
                GreenValue g = green_lift(
                    m, m.critical_lifts[static_cast<std::size_t>(i)],
                    1e-10);
                out.values[idx] = g.value;
            }
        } catch (const numeric_error&) {
            out.flags[idx] = 1;
        }
    });
    return out;
}

ScalarField scan_Lnr(const FamilySpec& family, const ParamGrid& grid, int n,
                     double r, int workers) {
    check_family_grid(family, grid);
    if (grid.dim() != 1)
        throw numeric_error("scan_Lnr: 1-dimensional grids only");
    if (r < 0.0 || r > 1.0) throw numeric_error("scan_Lnr: 0 <= r <= 1");
    ScalarField out = make_field(grid, "L_n_r");
    double dn = std::pow(static_cast<double>(family.degree), n);
    parallel_for(grid.cells(), workers, [&](std::size_t idx) {
        auto params = grid.params_at(idx);
        try {
            auto spec = multiplier_spectrum(family, params, n);
            double s = 0.0;
            for (cplx w : spec.multipliers)
                s += std::log(std::max({std::abs(w), r, 1e-300}));
            out.values[idx] = s / dn;
            out.flags[idx] = spec.collision_flagged ? 1 : 0;
        } catch (const numeric_error&) {
            out.flags[idx] = 1;
        }
    });
    return out;
}

ScalarField mandelbrot_mask(const ParamGrid& grid, int max_iter,
                            int workers) {
    grid.validate();
    if (grid.dim() != 1)
        throw numeric_error("mandelbrot_mask: 1-dimensional grids only");
    ScalarField out = make_field(grid, "mandelbrot_mask");
    parallel_for(grid.cells(), workers, [&](std::size_t idx) {
        cplx c = grid.params_at(idx)[0];
        cplx z(0.0);
        bool inside = true;
        for (int k = 0; k < max_iter && inside; ++k) {
            z = z * z + c;
            inside = std::norm(z) <= 4.0;
        }
        out.values[idx] = inside ? 1.0 : 0.0;
    });
    return out;
}

DensityField ddc_density(const ScalarField& field, int workers) {
    const ParamGrid& grid = field.grid;
    if (grid.dim() != 1)
        throw numeric_error("ddc_density: 1-dimensional fields only");
    int res = grid.axes[0].res;
    double h = grid.axes[0].h();
    double scale = 1.0 / (2.0 * std::numbers::pi * h * h);
    DensityField out = make_density(grid);
    auto at = [&](int ix, int iy) {
        return static_cast<std::size_t>(ix) * res +
               static_cast<std::size_t>(iy);
    };
    parallel_for(grid.cells(), workers, [&](std::size_t idx) {
        int ix = static_cast<int>(idx) / res, iy = static_cast<int>(idx) % res;
        if (ix < 1 || iy < 1 || ix >= res - 1 || iy >= res - 1) return;
        std::size_t e = at(ix + 1, iy), w = at(ix - 1, iy);
        std::size_t n = at(ix, iy + 1), s = at(ix, iy - 1);
        if (field.flags[idx] || field.flags[e] || field.flags[w] ||
            field.flags[n] || field.flags[s])
            return;
        out.values[idx] = scale * (field.values[e] + field.values[w] +
                                   field.values[n] + field.values[s] -
                                   4.0 * field.values[idx]);
        out.valid[idx] = 1;
    });
    finish_density(out);
    return out;
}

void smooth_field(ScalarField& field, int passes) {
    const ParamGrid& grid = field.grid;
    std::size_t n = grid.cells();
    // strides for one step along each real direction, innermost first
    std::vector<std::size_t> strides;
    std::size_t s = 1;
    for (int a = grid.dim() - 1; a >= 0; --a) {
        std::size_t r = static_cast<std::size_t>(grid.axes[a].res);
        strides.push_back(s);      // imaginary direction of axis a
        strides.push_back(s * r);  // real direction of axis a
        s *= r * r;
    }
    std::vector<double> tmp(n);
    for (int pass = 0; pass < passes; ++pass) {
        for (std::size_t axis = 0; axis < strides.size(); ++axis) {
            std::size_t st = strides[axis];
            std::size_t res = static_cast<std::size_t>(
                grid.axes[grid.dim() - 1 - static_cast<int>(axis) / 2].res);
            for (std::size_t idx = 0; idx < n; ++idx) {
                std::size_t pos = (idx / st) % res;
                if (field.flags[idx] || pos == 0 || pos == res - 1 ||
                    field.flags[idx - st] || field.flags[idx + st]) {
                    tmp[idx] = field.values[idx];
                    continue;
                }
                tmp[idx] = 0.25 * (field.values[idx - st] +
                                   2.0 * field.values[idx] +
                                   field.values[idx + st]);
            }
            field.values.swap(tmp);
        }
    }
}

DensityField wedge_density(const ScalarField& u, const ScalarField& v,
                           int workers) {
    const ParamGrid& grid = u.grid;
    if (grid.dim() != 2)
        throw numeric_error("wedge_density: 2-dimensional fields only");
    if (v.grid.dim() != 2 || v.grid.axes[0].res != grid.axes[0].res ||
        v.grid.axes[1].res != grid.axes[1].res ||
        std::abs(v.grid.axes[0].h() - grid.axes[0].h()) > 1e-15 ||
        std::abs(v.grid.axes[1].h() - grid.axes[1].h()) > 1e-15)
        throw numeric_error("wedge_density: grid geometry mismatch");

    int r1 = grid.axes[0].res, r2 = grid.axes[1].res;
    double h1 = grid.axes[0].h(), h2 = grid.axes[1].h();
    // strides in the flat index for one step along each real direction
    std::size_t sy2 = 1, sx2 = static_cast<std::size_t>(r2);
    std::size_t sy1 = sx2 * r2, sx1 = sy1 * r1;
    double C = 4.0 / (std::numbers::pi * std::numbers::pi);

    DensityField out = make_density(grid);
    parallel_for(grid.cells(), workers, [&](std::size_t idx) {
        int ix[2], iy[2];
        grid.decode(idx, ix, iy);
        if (ix[0] < 1 || iy[0] < 1 || ix[1] < 1 || iy[1] < 1 ||
            ix[0] >= r1 - 1 || iy[0] >= r1 - 1 || ix[1] >= r2 - 1 ||
            iy[1] >= r2 - 1)
            return;
        // the full stencil: center, +-1 along each direction, and the
        // four corners of each mixed pair
        const std::size_t S[4] = {sx1, sy1, sx2, sy2};
        for (int a = 0; a < 4; ++a) {
            if (u.flags[idx + S[a]] || u.flags[idx - S[a]] ||
                v.flags[idx + S[a]] || v.flags[idx - S[a]])
                return;
            for (int b = a + 1; b < 4; ++b)
                if (u.flags[idx + S[a] + S[b]] ||
                    u.flags[idx + S[a] - S[b]] ||
                    u.flags[idx - S[a] + S[b]] ||
                    u.flags[idx - S[a] - S[b]] ||
                    v.flags[idx + S[a] + S[b]] ||
                    v.flags[idx + S[a] - S[b]] ||
                    v.flags[idx - S[a] + S[b]] ||
                    v.flags[idx - S[a] - S[b]])
                    return;
        }
        if (u.flags[idx] || v.flags[idx]) return;

        auto second = [&](const std::vector<double>& f, std::size_t s,
                          double h) {
            return (f[idx + s] - 2.0 * f[idx] + f[idx - s]) / (h * h);
        };
        auto cross = [&](const std::vector<double>& f, std::size_t sa,
                         std::size_t sb, double ha, double hb) {
            return (f[idx + sa + sb] - f[idx + sa - sb] -
                    f[idx - sa + sb] + f[idx - sa - sb]) /
                   (4.0 * ha * hb);
        };
        // Wirtinger Hessian entries: u_kk = (u_xx + u_yy)/4 in axis k,
        // u_12 = ((u_x1x2 + u_y1y2) + i (u_x1y2 - u_y1x2)) / 4
        auto hess = [&](const std::vector<double>& f, double& f11,
                        double& f22, cplx& f12) {
            f11 = 0.25 * (second(f, sx1, h1) + second(f, sy1, h1));
            f22 = 0.25 * (second(f, sx2, h2) + second(f, sy2, h2));
            f12 = 0.25 * cplx(cross(f, sx1, sx2, h1, h2) +
                                  cross(f, sy1, sy2, h1, h2),
                              cross(f, sx1, sy2, h1, h2) -
                                  cross(f, sy1, sx2, h1, h2));
        };
        double u11, u22, v11, v22;
        cplx u12, v12;
        hess(u.values, u11, u22, u12);
        hess(v.values, v11, v22, v12);
        out.values[idx] =
            C * (u11 * v22 + u22 * v11 -
                 2.0 * (u12.real() * v12.real() + u12.imag() * v12.imag()));
        out.valid[idx] = 1;
    });
    finish_density(out);
    return out;
}

double empirical_vs_density(std::span<const cplx> points,
                            std::span<const double> weights,
                            const DensityField& density) {
    const ParamGrid& grid = density.grid;
    if (grid.dim() != 1)
        throw numeric_error("empirical_vs_density: 1-dimensional only");
    if (!weights.empty() && weights.size() != points.size())
        throw numeric_error("empirical_vs_density: weight count mismatch");
    int res = grid.axes[0].res;
    double h = grid.axes[0].h();
    cplx c0 = grid.axes[0].center;

    std::vector<double> emp(grid.cells(), 0.0);
    double emp_tot = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        double w = weights.empty() ? 1.0 : weights[i];
        double fx = (points[i].real() - c0.real() + grid.axes[0].halfw) / h;
        double fy = (points[i].imag() - c0.imag() + grid.axes[0].halfw) / h;
        int ix = static_cast<int>(std::floor(fx));
        int iy = static_cast<int>(std::floor(fy));
        if (ix < 0 || iy < 0 || ix >= res || iy >= res) continue;
        std::size_t idx =
            static_cast<std::size_t>(ix) * res + static_cast<std::size_t>(iy);
        if (!density.valid[idx]) continue;
        emp[idx] += w;
        emp_tot += w;
    }
    double den_tot = 0.0;
    for (std::size_t i = 0; i < density.values.size(); ++i)
        if (density.valid[i] && density.values[i] > 0.0)
            den_tot += density.values[i];
    if (emp_tot <= 0.0 || den_tot <= 0.0)
        throw numeric_error("empirical_vs_density: empty measure");

    double tv = 0.0;
    for (std::size_t i = 0; i < density.values.size(); ++i) {
        double q = (density.valid[i] && density.values[i] > 0.0)
                       ? density.values[i] / den_tot
                       : 0.0;
        tv += std::abs(emp[i] / emp_tot - q);
    }
    return 0.5 * tv;
}

}  // namespace holodyn
