#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "lcs/integrator.hpp"
#include "lcs/oracle.hpp"
#include "lcs/strain_fields.hpp"

using namespace lcs;

namespace {

double angle_deg(const Vec3& a, const Vec3& b) {
  // direction lines, not oriented vectors
  const double c = std::min(1.0, std::fabs(dot(normalized(a), normalized(b))));
  return std::acos(c) * 180.0 / M_PI;
}

}  // namespace

TEST_CASE("analytic tensor for u=z") {
  ShearProfiles sp;
  sp.u = [](double z, double) { return z; };
  sp.v = [](double, double) { return 0.0; };
  sp.w = [](double) { return 0.0; };
  sp.uz = [](double, double) { return 1.0; };
  sp.vz = [](double, double) { return 0.0; };
  AnalyticCG cg = parallel_shear_cg(sp, 1.0, 0.0, 1.0, 0.01);
  CHECK(cg.a == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cg.b == doctest::Approx(0.0));
  CHECK(cg.C(0, 0) == 1.0);
  CHECK(cg.C(0, 2) == doctest::Approx(1.0));
  CHECK(cg.C(2, 2) == doctest::Approx(2.0));
  CHECK(cg.C(0, 1) == 0.0);
  CHECK(cg.C(1, 1) == 1.0);
}

TEST_CASE("quiescent profiles give the identity") {
  ShearProfiles sp;
  sp.u = [](double, double) { return 0.0; };
  sp.v = [](double, double) { return 0.0; };
  sp.w = [](double) { return 0.3; };
  AnalyticCG cg = parallel_shear_cg(sp, 0.5, 0.0, 2.0, 0.01);
  CHECK(cg.a == doctest::Approx(0.0));
  CHECK(cg.b == doctest::Approx(0.0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(cg.C(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));
}

TEST_CASE("analytic tensor matches the numerical pipeline") {
  ShearProfiles sp;
  sp.u = [](double z, double t) { return std::sin(z) + 0.2 * t; };
  sp.v = [](double z, double) { return std::cos(2.0 * z); };
  sp.w = [](double t) { return 0.1 + 0.05 * std::sin(t); };
  sp.uz = [](double z, double) { return std::cos(z); };
  sp.vz = [](double z, double) { return -2.0 * std::sin(2.0 * z); };
  auto field = make_parallel_shear(sp);
  IntegratorConfig ic;
  for (double z0 : {0.4, 1.7, 3.0}) {
    AnalyticCG cg = parallel_shear_cg(sp, z0, 0.0, 2.0, ic.dt);
    FlowMapSample s = flow_map_sample(*field, {2.0, 2.0, z0}, 0.0, 2.0, ic);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(std::fabs(s.C(i, j) - cg.C(i, j)) <= 1e-6 * std::max(1.0, std::fabs(cg.C(i, j))));
  }
}

TEST_CASE("brute-force shear maximum for the unit-shear tensor") {
  Mat3 C = Mat3::identity();
  C(0, 2) = C(2, 0) = 1.0;
  C(2, 2) = 2.0;
  SphereExtremum e = brute_max_shear(C, 20000);
  CHECK(e.value == doctest::Approx(1.0).epsilon(1e-6));
  EigenFrame f = eigen_frame(C);
  ShearNormals n = shear_normals(f);
  const double ang = std::min(angle_deg(e.direction, n.n_plus), angle_deg(e.direction, n.n_minus));
  CHECK(ang < 1.0);
}

TEST_CASE("brute-force repulsion maximum on a diagonal tensor") {
  Mat3 C{};
  C(0, 0) = 0.25;
  C(1, 1) = 1.0;
  C(2, 2) = 4.0;
  SphereExtremum e = brute_max_repulsion(C, 20000);
  CHECK(e.value == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(angle_deg(e.direction, {0, 0, 1}) < 1.0);
}

TEST_CASE("sphere search guards") {
  Mat3 C{};
  C(0, 0) = 0.5;
  C(1, 1) = 1.0;
  C(2, 2) = 2.0;
  CHECK_THROWS_AS((void)brute_max_shear(C, 100), std::invalid_argument);
  CHECK_THROWS_AS((void)brute_max_shear(Mat3::identity(), 20000), std::domain_error);
  CHECK_THROWS_AS((void)brute_max_repulsion(Mat3::identity(), 20000), std::domain_error);
}

TEST_CASE("random tensors: extrema match the closed forms") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int done = 0;
  while (done < 10) {
    Mat3 g;
    for (int i = 0; i < 9; ++i) g.m[static_cast<size_t>(i)] = u(rng);
    for (int i = 0; i < 3; ++i) g(i, i) += 2.0;
    Mat3 C = symmetrize(transpose(g) * g) * 0.5;
    EigenFrame f = eigen_frame(C);
    if (!f.in_U) continue;
    ++done;
    SphereExtremum rho = brute_max_repulsion(C, 20000);
    CHECK(std::fabs(rho.value - std::sqrt(f.lambda3)) <= 1e-3);
    CHECK(angle_deg(rho.direction, f.xi3) < 1.0);
    SphereExtremum sig = brute_max_shear(C, 20000);
    CHECK(std::fabs(sig.value - std::fabs(std::sqrt(f.lambda3) - std::sqrt(f.lambda1))) <= 1e-3);
    ShearNormals n = shear_normals(f);
    CHECK(std::min(angle_deg(sig.direction, n.n_plus), angle_deg(sig.direction, n.n_minus)) < 1.0);
  }
}

TEST_CASE("angle lemma residual vanishes at n_pm x xi2") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int done = 0;
  while (done < 20) {
    Mat3 g;
    for (int i = 0; i < 9; ++i) g.m[static_cast<size_t>(i)] = u(rng);
    for (int i = 0; i < 3; ++i) g(i, i) += 2.0;
    Mat3 C = symmetrize(transpose(g) * g) * 0.5;
    EigenFrame f = eigen_frame(C);
    if (!f.in_U) continue;
    ++done;
    ShearNormals n = shear_normals(f);
    const Vec3 vp = normalized(cross(n.n_plus, f.xi2));
    const Vec3 vm = normalized(cross(n.n_minus, f.xi2));
    CHECK(std::fabs(angle_lemma_residual(C, f, vp)) <= 1e-9 * std::max(1.0, f.lambda3));
    CHECK(std::fabs(angle_lemma_residual(C, f, vm)) <= 1e-9 * std::max(1.0, f.lambda3));
    // generic direction does not satisfy the identity
    if (f.lambda3 - f.lambda1 > 0.1)
      CHECK(std::fabs(angle_lemma_residual(C, f, f.xi3)) > 1e-6);
  }
}
