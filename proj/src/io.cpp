#include "lcs/io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace lcs {
namespace {

constexpr char kMagic[8] = {'L', 'C', 'S', '3', 'D', 'G', 'R', 'D'};
constexpr std::uint32_t kVersion = 1;

static_assert(sizeof(double) == 8);

#pragma pack(push, 1)
struct GridHeader {
  char magic[8];
  std::uint32_t version;
  std::uint32_t nx;
  std::uint32_t ny;
  double s1, t0, T, dx, dy;
  char pad[4];
};
#pragma pack(pop)
static_assert(sizeof(GridHeader) == 64);

// Field order of the f64 blocks following the header. Per layer (0: z-hz,
// 1: main, 2: z+hz): lambda1..3, xi1..xi3 components, n+ and n- components,
// detF, eigen_ok, in_U. Then the main-layer helicity fields.
const char* kLayerFields[] = {
    "lambda1", "lambda2", "lambda3", "xi1_x", "xi1_y", "xi1_z", "xi2_x", "xi2_y", "xi2_z",
    "xi3_x",   "xi3_y",   "xi3_z",   "np_x",  "np_y",  "np_z",  "nm_x",  "nm_y",  "nm_z",
    "detF",    "eigen_ok", "in_U"};
const char* kHelicityFields[] = {"H_xi1", "H_xi3", "H_nplus", "H_nminus", "H_valid"};

void gather_layer(const std::vector<GridPoint>& layer, int field, std::vector<double>& buf) {
  buf.resize(layer.size());
  for (size_t k = 0; k < layer.size(); ++k) {
    const GridPoint& g = layer[k];
    switch (field) {
      case 0: buf[k] = g.frame.lambda1; break;
      case 1: buf[k] = g.frame.lambda2; break;
      case 2: buf[k] = g.frame.lambda3; break;
      case 3: buf[k] = g.frame.xi1.x; break;
      case 4: buf[k] = g.frame.xi1.y; break;
      case 5: buf[k] = g.frame.xi1.z; break;
      case 6: buf[k] = g.frame.xi2.x; break;
      case 7: buf[k] = g.frame.xi2.y; break;
      case 8: buf[k] = g.frame.xi2.z; break;
      case 9: buf[k] = g.frame.xi3.x; break;
      case 10: buf[k] = g.frame.xi3.y; break;
      case 11: buf[k] = g.frame.xi3.z; break;
      case 12: buf[k] = g.n_plus.x; break;
      case 13: buf[k] = g.n_plus.y; break;
      case 14: buf[k] = g.n_plus.z; break;
      case 15: buf[k] = g.n_minus.x; break;
      case 16: buf[k] = g.n_minus.y; break;
      case 17: buf[k] = g.n_minus.z; break;
      case 18: buf[k] = g.detF; break;
      case 19: buf[k] = g.eigen_ok ? 1.0 : 0.0; break;
      case 20: buf[k] = g.frame.in_U ? 1.0 : 0.0; break;
    }
  }
}

void scatter_layer(std::vector<GridPoint>& layer, int field, const std::vector<double>& buf) {
  for (size_t k = 0; k < layer.size(); ++k) {
    GridPoint& g = layer[k];
    const double v = buf[k];
    switch (field) {
      case 0: g.frame.lambda1 = v; break;
      case 1: g.frame.lambda2 = v; break;
      case 2: g.frame.lambda3 = v; break;
      case 3: g.frame.xi1.x = v; break;
      case 4: g.frame.xi1.y = v; break;
      case 5: g.frame.xi1.z = v; break;
      case 6: g.frame.xi2.x = v; break;
      case 7: g.frame.xi2.y = v; break;
      case 8: g.frame.xi2.z = v; break;
      case 9: g.frame.xi3.x = v; break;
      case 10: g.frame.xi3.y = v; break;
      case 11: g.frame.xi3.z = v; break;
      case 12: g.n_plus.x = v; break;
      case 13: g.n_plus.y = v; break;
      case 14: g.n_plus.z = v; break;
      case 15: g.n_minus.x = v; break;
      case 16: g.n_minus.y = v; break;
      case 17: g.n_minus.z = v; break;
      case 18: g.detF = v; break;
      case 19: g.eigen_ok = v != 0.0; break;
      case 20: g.frame.in_U = v != 0.0; break;
    }
  }
}

}  // namespace

void save_grid(const DeformationGrid& grid, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("save_grid: cannot open " + path);

  GridHeader h{};
  std::memcpy(h.magic, kMagic, 8);
  h.version = kVersion;
  h.nx = static_cast<std::uint32_t>(grid.nx);
  h.ny = static_cast<std::uint32_t>(grid.ny);
  h.s1 = grid.s1;
  h.t0 = grid.t0;
  h.T = grid.T;
  h.dx = grid.dx;
  h.dy = grid.dy;
  f.write(reinterpret_cast<const char*>(&h), sizeof(h));

  const size_t n = static_cast<size_t>(grid.nx) * static_cast<size_t>(grid.ny);
  std::vector<double> buf(n);
  for (int layer = 0; layer < 3; ++layer)
    for (int field = 0; field < 21; ++field) {
      gather_layer(grid.layers[static_cast<size_t>(layer)], field, buf);
      f.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(n * 8));
    }
  const std::vector<double>* hel[4] = {&grid.H_xi1, &grid.H_xi3, &grid.H_nplus, &grid.H_nminus};
  for (const auto* field : hel) {
    buf.assign(n, 0.0);
    if (field->size() == n) buf = *field;
    f.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(n * 8));
  }
  buf.assign(n, 0.0);
  if (grid.H_valid.size() == n)
    for (size_t k = 0; k < n; ++k) buf[k] = grid.H_valid[k] ? 1.0 : 0.0;
  f.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(n * 8));
  if (!f) throw std::runtime_error("save_grid: write failed for " + path);

  std::ofstream side(path + ".txt");
  if (!side) throw std::runtime_error("save_grid: cannot open sidecar for " + path);
  side << "format lcs-grid v" << kVersion << "\n";
  side << "x0 " << grid.x0 << "\ny0 " << grid.y0 << "\nhz " << grid.hz << "\n";
  side << "layers 3 (z-hz, main, z+hz), row-major f64 per field\n";
  side << "mask: eigen_ok and in_U are 0/1; a point is usable when both are 1;\n";
  side << "mask: H_* values are meaningful only where H_valid is 1\n";
  side << "layer_fields";
  for (const char* name : kLayerFields) side << ' ' << name;
  side << "\nmain_layer_fields";
  for (const char* name : kHelicityFields) side << ' ' << name;
  side << "\n";
  side.precision(17);
}

DeformationGrid load_grid(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("load_grid: cannot open " + path);
  GridHeader h{};
  f.read(reinterpret_cast<char*>(&h), sizeof(h));
  if (!f || std::memcmp(h.magic, kMagic, 8) != 0)
    throw std::runtime_error("load_grid: bad magic in " + path);
  if (h.version != kVersion) throw std::runtime_error("load_grid: unsupported version");

  DeformationGrid g;
  g.nx = static_cast<int>(h.nx);
  g.ny = static_cast<int>(h.ny);
  g.s1 = h.s1;
  g.t0 = h.t0;
  g.T = h.T;
  g.dx = h.dx;
  g.dy = h.dy;

  {
    std::ifstream side(path + ".txt");
    if (!side) throw std::runtime_error("load_grid: missing sidecar " + path + ".txt");
    std::string key;
    while (side >> key) {
      if (key == "x0") side >> g.x0;
      else if (key == "y0") side >> g.y0;
      else if (key == "hz") side >> g.hz;
      else side.ignore(1 << 20, '\n');
    }
  }

  const size_t n = static_cast<size_t>(g.nx) * static_cast<size_t>(g.ny);
  std::vector<double> buf(n);
  auto read_block = [&]() {
    f.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n * 8));
    if (!f) throw std::runtime_error("load_grid: truncated file " + path);
  };
  for (int layer = 0; layer < 3; ++layer) {
    g.layers[static_cast<size_t>(layer)].resize(n);
    for (int field = 0; field < 21; ++field) {
      read_block();
      scatter_layer(g.layers[static_cast<size_t>(layer)], field, buf);
    }
  }
  std::vector<double>* hel[4] = {&g.H_xi1, &g.H_xi3, &g.H_nplus, &g.H_nminus};
  for (auto* field : hel) {
    read_block();
    *field = buf;
  }
  read_block();
  g.H_valid.resize(n);
  for (size_t k = 0; k < n; ++k) g.H_valid[k] = buf[k] != 0.0 ? 1 : 0;
  return g;
}

void save_ply(const BarrierSurface& s, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("save_ply: cannot open " + path);
  f.precision(10);
  f << "ply\nformat ascii 1.0\n";
  f << "element vertex " << s.vertices.size() << "\n";
  f << "property double x\nproperty double y\nproperty double z\n";
  f << "property double helicity\nproperty double lambda2\n";
  f << "element face " << s.faces.size() << "\n";
  f << "property list uchar int vertex_indices\nend_header\n";
  for (size_t v = 0; v < s.vertices.size(); ++v) {
    const Vec3& p = s.vertices[v];
    const double H = v < s.helicity.size() ? s.helicity[v] : 0.0;
    const double l2 = v < s.lambda2.size() ? s.lambda2[v] : 0.0;
    f << p.x << ' ' << p.y << ' ' << p.z << ' ' << H << ' ' << l2 << "\n";
  }
  for (const auto& face : s.faces)
    f << "3 " << face[0] << ' ' << face[1] << ' ' << face[2] << "\n";
  if (!f) throw std::runtime_error("save_ply: write failed for " + path);
}

void save_vtk(const BarrierSurface& s, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("save_vtk: cannot open " + path);
  f.precision(10);
  f << "# vtk DataFile Version 3.0\nbarrier surface\nASCII\nDATASET POLYDATA\n";
  f << "POINTS " << s.vertices.size() << " double\n";
  for (const auto& p : s.vertices) f << p.x << ' ' << p.y << ' ' << p.z << "\n";
  f << "POLYGONS " << s.faces.size() << ' ' << s.faces.size() * 4 << "\n";
  for (const auto& face : s.faces)
    f << "3 " << face[0] << ' ' << face[1] << ' ' << face[2] << "\n";
  f << "POINT_DATA " << s.vertices.size() << "\n";
  f << "SCALARS helicity double 1\nLOOKUP_TABLE default\n";
  for (size_t v = 0; v < s.vertices.size(); ++v)
    f << (v < s.helicity.size() ? s.helicity[v] : 0.0) << "\n";
  f << "SCALARS lambda2 double 1\nLOOKUP_TABLE default\n";
  for (size_t v = 0; v < s.vertices.size(); ++v)
    f << (v < s.lambda2.size() ? s.lambda2[v] : 0.0) << "\n";
  if (!f) throw std::runtime_error("save_vtk: write failed for " + path);
}

}  // namespace lcs
