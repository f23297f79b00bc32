#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "lcs/barriers.hpp"
#include "lcs/flow_models.hpp"
#include "lcs/io.hpp"
#include "lcs/strain_fields.hpp"

using namespace lcs;
namespace fs = std::filesystem;

namespace {

std::string tmp_path(const std::string& name) {
  return (fs::temp_directory_path() / name).string();
}

ReducedLine ring(double z, double r, int n = 32) {
  ReducedLine line;
  line.kind = LineKind::ShearPlus;
  line.s1 = z;
  line.closed = true;
  line.termination = Termination::Closed;
  for (int k = 0; k <= n; ++k) {
    const double th = 2.0 * M_PI * (k % n) / n;
    line.vertices.push_back({2.0 + r * std::cos(th), 2.0 + r * std::sin(th), z});
    line.helicity.push_back(0.0);
  }
  return line;
}

}  // namespace

TEST_CASE("grid binary round trip is exact") {
  auto field = make_steady_abc();
  IntegratorConfig ic;
  ic.dt = 0.05;
  PlaneConfig pc;
  pc.hz = 1e-3;
  DeformationGrid g = sample_plane(*field, 0.7, 12, 11, 0.0, 1.0, ic, pc);
  fill_helicity_fields(g);
  const std::string path = tmp_path("lcs_roundtrip.lcsgrid");
  save_grid(g, path);
  DeformationGrid r = load_grid(path);

  CHECK(r.nx == g.nx);
  CHECK(r.ny == g.ny);
  CHECK(r.s1 == g.s1);
  CHECK(r.t0 == g.t0);
  CHECK(r.T == g.T);
  CHECK(r.x0 == g.x0);
  CHECK(r.y0 == g.y0);
  CHECK(r.dx == g.dx);
  CHECK(r.dy == g.dy);
  CHECK(r.hz == g.hz);

  const size_t n = static_cast<size_t>(g.nx) * static_cast<size_t>(g.ny);
  auto same = [](double a, double b) {
    return (std::isnan(a) && std::isnan(b)) || a == b;
  };
  for (int layer = 0; layer < 3; ++layer) {
    const auto& gl = g.layers[static_cast<size_t>(layer)];
    const auto& rl = r.layers[static_cast<size_t>(layer)];
    REQUIRE(rl.size() == n);
    for (size_t k = 0; k < n; ++k) {
      CHECK(rl[k].eigen_ok == gl[k].eigen_ok);
      CHECK(rl[k].frame.in_U == gl[k].frame.in_U);
      CHECK(same(rl[k].frame.lambda1, gl[k].frame.lambda1));
      CHECK(same(rl[k].frame.lambda2, gl[k].frame.lambda2));
      CHECK(same(rl[k].frame.lambda3, gl[k].frame.lambda3));
      CHECK(same(rl[k].detF, gl[k].detF));
      for (int c = 0; c < 3; ++c) {
        CHECK(same(rl[k].frame.xi1[c], gl[k].frame.xi1[c]));
        CHECK(same(rl[k].frame.xi2[c], gl[k].frame.xi2[c]));
        CHECK(same(rl[k].frame.xi3[c], gl[k].frame.xi3[c]));
        CHECK(same(rl[k].n_plus[c], gl[k].n_plus[c]));
        CHECK(same(rl[k].n_minus[c], gl[k].n_minus[c]));
      }
    }
  }
  REQUIRE(r.H_xi3.size() == n);
  for (size_t k = 0; k < n; ++k) {
    CHECK(same(r.H_xi1[k], g.H_xi1[k]));
    CHECK(same(r.H_xi3[k], g.H_xi3[k]));
    CHECK(same(r.H_nplus[k], g.H_nplus[k]));
    CHECK(same(r.H_nminus[k], g.H_nminus[k]));
    CHECK(r.H_valid[k] == g.H_valid[k]);
  }
  fs::remove(path);
  fs::remove(path + ".txt");
}

TEST_CASE("grid loader rejects corrupt inputs") {
  auto field = make_zero_field();
  DeformationGrid g = sample_plane(*field, 0.5, 8, 8, 0.0, 0.5);
  const std::string path = tmp_path("lcs_corrupt.lcsgrid");
  save_grid(g, path);

  SUBCASE("bad magic") {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.write("JUNKJUNK", 8);
    f.close();
    CHECK_THROWS_AS((void)load_grid(path), std::runtime_error);
  }
  SUBCASE("truncated payload") {
    fs::resize_file(path, fs::file_size(path) / 2);
    CHECK_THROWS_AS((void)load_grid(path), std::runtime_error);
  }
  SUBCASE("missing sidecar") {
    fs::remove(path + ".txt");
    CHECK_THROWS_AS((void)load_grid(path), std::runtime_error);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS((void)load_grid(tmp_path("lcs_nonexistent.lcsgrid")), std::runtime_error);
  }
  fs::remove(path);
  fs::remove(path + ".txt");
}

TEST_CASE("PLY output carries the mesh and scalars") {
  BarrierSurface s = build_surface({ring(0.0, 1.0), ring(0.3, 1.0)}, 24);
  s.helicity.assign(s.vertices.size(), 0.25);
  s.lambda2.assign(s.vertices.size(), 1.5);
  const std::string path = tmp_path("lcs_mesh.ply");
  save_ply(s, path);

  std::ifstream f(path);
  REQUIRE(f.good());
  std::string line;
  std::getline(f, line);
  CHECK(line == "ply");
  int n_vert = -1, n_face = -1;
  while (std::getline(f, line) && line != "end_header") {
    std::istringstream iss(line);
    std::string w1, w2;
    iss >> w1 >> w2;
    if (w1 == "element" && w2 == "vertex") iss >> n_vert;
    if (w1 == "element" && w2 == "face") iss >> n_face;
  }
  CHECK(n_vert == static_cast<int>(s.vertices.size()));
  CHECK(n_face == static_cast<int>(s.faces.size()));
  // first vertex row: x y z helicity lambda2
  std::getline(f, line);
  std::istringstream row(line);
  double vals[5];
  int got = 0;
  while (got < 5 && (row >> vals[got])) ++got;
  CHECK(got == 5);
  CHECK(vals[3] == doctest::Approx(0.25));
  CHECK(vals[4] == doctest::Approx(1.5));
  fs::remove(path);
}

TEST_CASE("VTK output is well-formed polydata") {
  BarrierSurface s = build_surface({ring(0.0, 1.0), ring(0.3, 1.0)}, 24);
  const std::string path = tmp_path("lcs_mesh.vtk");
  save_vtk(s, path);

  std::ifstream f(path);
  REQUIRE(f.good());
  std::string content((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  CHECK(content.find("DATASET POLYDATA") != std::string::npos);
  CHECK(content.find("POINTS " + std::to_string(s.vertices.size())) != std::string::npos);
  CHECK(content.find("POLYGONS " + std::to_string(s.faces.size())) != std::string::npos);
  CHECK(content.find("POINT_DATA " + std::to_string(s.vertices.size())) != std::string::npos);
  fs::remove(path);
}
