#include "holodyn/field_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>

namespace holodyn {

namespace {

std::ofstream open_out(const std::string& path, bool binary = false) {
    std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
    if (!f) throw numeric_error("cannot open output file: " + path);
    return f;
}

std::string fmt17(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void grid_csv(const ParamGrid& grid, const std::vector<double>& values,
              const std::string& path) {
    if (grid.dim() != 1)
        throw numeric_error("csv export: 1-dimensional grids only");
    auto f = open_out(path);
    f << "x,y,value\n";
    int res = grid.axes[0].res;
    for (int iy = 0; iy < res; ++iy)
        for (int ix = 0; ix < res; ++ix) {
            cplx p = grid.axes[0].point(ix, iy);
            std::size_t idx = static_cast<std::size_t>(ix) * res +
                              static_cast<std::size_t>(iy);
            f << fmt17(p.real()) << ',' << fmt17(p.imag()) << ','
              << fmt17(values[idx]) << '\n';
        }
}

void grid_pgm(const ParamGrid& grid, const std::vector<double>& values,
              const std::string& path) {
    if (grid.dim() != 1)
        throw numeric_error("pgm export: 1-dimensional grids only");
    int res = grid.axes[0].res;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double span = hi > lo ? hi - lo : 1.0;

    auto f = open_out(path, true);
    f << "P5\n" << res << ' ' << res << "\n65535\n";
    // raster rows top to bottom = decreasing imaginary part
    for (int iy = res - 1; iy >= 0; --iy)
        for (int ix = 0; ix < res; ++ix) {
            std::size_t idx = static_cast<std::size_t>(ix) * res +
                              static_cast<std::size_t>(iy);
            double t = (values[idx] - lo) / span;
            auto g = static_cast<std::uint16_t>(
                std::lround(std::clamp(t, 0.0, 1.0) * 65535.0));
            unsigned char bytes[2] = {
                static_cast<unsigned char>(g >> 8),
                static_cast<unsigned char>(g & 0xff)};
            f.write(reinterpret_cast<const char*>(bytes), 2);
        }

    auto s = open_out(path + ".scale.txt");
    s << "min " << fmt17(lo) << "\nmax " << fmt17(hi)
      << "\nencoding linear uint16 big-endian\n";
}

}  // namespace

void write_field_csv(const ScalarField& field, const std::string& path) {
    grid_csv(field.grid, field.values, path);
}

void write_density_csv(const DensityField& field, const std::string& path) {
    grid_csv(field.grid, field.values, path);
}

void write_field_pgm(const ScalarField& field, const std::string& path) {
    grid_pgm(field.grid, field.values, path);
}

void write_density_pgm(const DensityField& field, const std::string& path) {
    grid_pgm(field.grid, field.values, path);
}

void write_samples_csv(const SampleCloud& cloud, const std::string& path) {
    auto f = open_out(path);
    f << "re,im\n";
    for (const C2& p : cloud.points) {
        cplx z = p.x / p.y;
        f << fmt17(z.real()) << ',' << fmt17(z.imag()) << '\n';
    }
}

void write_cycles_csv(const std::vector<CycleRecord>& cycles,
                      const std::string& path) {
    auto f = open_out(path);
    f << "n,re_z,im_z,re_w,im_w,class\n";
    for (const CycleRecord& c : cycles) {
        const char* cls = c.cls == CycleClass::Repelling    ? "repelling"
                          : c.cls == CycleClass::Attracting ? "attracting"
                                                            : "neutral";
        f << c.period << ',' << fmt17(c.representative.real()) << ','
          << fmt17(c.representative.imag()) << ','
          << fmt17(c.multiplier.real()) << ','
          << fmt17(c.multiplier.imag()) << ',' << cls << '\n';
    }
}

}  // namespace holodyn
