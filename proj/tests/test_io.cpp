#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "holodyn/field_io.hpp"

using namespace holodyn;
namespace fs = std::filesystem;

namespace {

ScalarField tiny_field(int res) {
    ScalarField f;
    f.grid.axes.push_back({cplx(0.25, -0.5), 1.0, res});
    f.label = "L";
    f.values.resize(f.grid.cells());
    f.flags.assign(f.grid.cells(), 0);
    for (std::size_t i = 0; i < f.grid.cells(); ++i) {
        cplx z = f.grid.params_at(i)[0];
        f.values[i] = z.real() * z.real() - 0.3 * z.imag();
    }
    return f;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path dir;
    TempDir() {
        dir = fs::temp_directory_path() /
              ("holodyn_io_test_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~TempDir() { fs::remove_all(dir); }
};

}  // namespace

TEST_CASE("csv format: header, digits, round trip") {
    TempDir td;
    auto f = tiny_field(16);
    auto path = td.dir / "f.csv";
    write_field_csv(f, path.string());

    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,y,value");

    std::string line;
    std::size_t rows = 0;
    int res = 16;
    bool round_trips = true;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string sx, sy, sv;
        std::getline(ls, sx, ',');
        std::getline(ls, sy, ',');
        std::getline(ls, sv);
        double v = std::stod(sv);
        // rows run over iy (outer) then ix; flat storage is ix * res + iy
        std::size_t ix = rows % res, iy = rows / res;
        if (v != f.values[ix * res + iy]) round_trips = false;
        ++rows;
    }
    CHECK(rows == f.grid.cells());
    CHECK(round_trips);  // 17 significant digits reproduce doubles exactly
}

TEST_CASE("pgm format: header bytes and payload size") {
    TempDir td;
    auto f = tiny_field(20);
    auto path = td.dir / "f.pgm";
    write_field_pgm(f, path.string());

    std::string data = slurp(path);
    std::string want_header = "P5\n20 20\n65535\n";
    REQUIRE(data.size() > want_header.size());
    CHECK(data.substr(0, want_header.size()) == want_header);
    CHECK(data.size() == want_header.size() + 2u * 20u * 20u);

    // scale sidecar exists and parses
    std::ifstream sc(path.string() + ".scale.txt");
    REQUIRE(sc.good());
    std::string key_lo, key_hi;
    double lo, hi;
    sc >> key_lo >> lo >> key_hi >> hi;
    CHECK(key_lo == "min");
    CHECK(key_hi == "max");
    CHECK(lo < hi);

    // 16-bit big-endian payload: min maps to 0, max to 65535
    const unsigned char* body = reinterpret_cast<const unsigned char*>(
        data.data() + want_header.size());
    unsigned mn = 70000, mx = 0;
    for (std::size_t i = 0; i < 20u * 20u; ++i) {
        unsigned v = (static_cast<unsigned>(body[2 * i]) << 8) |
                     body[2 * i + 1];
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    CHECK(mn == 0u);
    CHECK(mx == 65535u);
}

TEST_CASE("byte-identical output is independent of worker count") {
    TempDir td;
    ParamGrid g;
    g.axes.push_back({cplx(-0.4, 0.1), 0.8, 24});
    auto a = scan_L(FamilySpec::quadratic(), g, LyapMethod::Formula, 1);
    auto b = scan_L(FamilySpec::quadratic(), g, LyapMethod::Formula, 3);
    auto pa = td.dir / "a.csv";
    auto pb = td.dir / "b.csv";
    write_field_csv(a, pa.string());
    write_field_csv(b, pb.string());
    CHECK(slurp(pa) == slurp(pb));
}

TEST_CASE("samples csv") {
    TempDir td;
    SampleCloud cloud;
    cloud.points.push_back({cplx(3.0, 4.0), cplx(2.0, 0.0)});  // z = 1.5+2i
    auto path = td.dir / "s.csv";
    write_samples_csv(cloud, path.string());
    std::ifstream in(path);
    std::string header, row;
    std::getline(in, header);
    CHECK(header == "re,im");
    std::getline(in, row);
    std::istringstream ls(row);
    std::string sre, sim;
    std::getline(ls, sre, ',');
    std::getline(ls, sim);
    CHECK(std::stod(sre) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(std::stod(sim) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("cycles csv carries period, point, multiplier, class") {
    TempDir td;
    std::vector<CycleRecord> cycles(2);
    cycles[0].period = 2;
    cycles[0].representative = cplx(0.5, -0.5);
    cycles[0].multiplier = cplx(4.0, 0.0);
    cycles[0].cls = CycleClass::Repelling;
    cycles[1].period = 1;
    cycles[1].representative = cplx(0.0, 0.0);
    cycles[1].multiplier = cplx(0.0, 0.0);
    cycles[1].cls = CycleClass::Attracting;
    auto path = td.dir / "c.csv";
    write_cycles_csv(cycles, path.string());
    std::string data = slurp(path);
    CHECK(data.find("n,re_z,im_z,re_w,im_w,class") == 0);
    CHECK(data.find("repelling") != std::string::npos);
    CHECK(data.find("attracting") != std::string::npos);
}
