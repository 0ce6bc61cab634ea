#pragma once

#include <string>
#include <vector>

#include "holodyn/bifurcation.hpp"
#include "holodyn/cycles.hpp"
#include "holodyn/green.hpp"

namespace holodyn {

// CSV "x,y,value" with 17 significant digits, '\n' line ends, header row.
// 1-dimensional grids only; (x, y) is the cell-center parameter.
void write_field_csv(const ScalarField& field, const std::string& path);
void write_density_csv(const DensityField& field, const std::string& path);

// 16-bit binary PGM (big-endian, header "P5\n<w> <h>\n65535\n") under
// linear min-max scaling; the scaling is recorded in "<path>.scale.txt".
void write_field_pgm(const ScalarField& field, const std::string& path);
void write_density_pgm(const DensityField& field, const std::string& path);

// CSV "re,im": sample points in the standard chart z = x/y
void write_samples_csv(const SampleCloud& cloud, const std::string& path);

// CSV "n,re_z,im_z,re_w,im_w,class"
void write_cycles_csv(const std::vector<CycleRecord>& cycles,
                      const std::string& path);

}  // namespace holodyn
