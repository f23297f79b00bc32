#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lcs/flow_models.hpp"
#include "lcs/integrator.hpp"

using namespace lcs;

namespace {

FieldPtr shear_uz() {
  ShearProfiles sp;
  sp.u = [](double z, double) { return z; };
  sp.v = [](double, double) { return 0.0; };
  sp.w = [](double) { return 0.0; };
  sp.uz = [](double, double) { return 1.0; };
  sp.vz = [](double, double) { return 0.0; };
  return make_parallel_shear(sp);
}

}  // namespace

TEST_CASE("zero field: identity flow") {
  auto z = make_zero_field();
  Vec3 x0{1.2, 3.4, 5.6};
  CHECK(norm(advect_point(*z, x0, 0.0, 7.3) - x0) == 0.0);
  Mat3 g = flow_gradient(*z, x0, 0.0, 2.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(g(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));
}

TEST_CASE("parallel shear u=z has the exact linear flow map") {
  auto f = shear_uz();
  const double T = 2.5;
  Vec3 end = advect_point(*f, {0, 0, 1}, 0.0, T);
  CHECK(end.x == doctest::Approx(T).epsilon(1e-12));
  CHECK(end.y == doctest::Approx(0.0));
  CHECK(end.z == doctest::Approx(1.0));

  Mat3 g = flow_gradient(*f, {0.3, 0.4, 1.0}, 0.0, T);
  CHECK(g(0, 0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(g(0, 2) == doctest::Approx(T).epsilon(1e-9));
  CHECK(g(1, 1) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(g(2, 2) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(g(1, 0) == doctest::Approx(0.0));
  CHECK(g(2, 0) == doctest::Approx(0.0));

  Mat3 C = cauchy_green(g);
  CHECK(C(0, 0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(C(0, 2) == doctest::Approx(T).epsilon(1e-8));
  CHECK(C(2, 0) == doctest::Approx(T).epsilon(1e-8));
  CHECK(C(2, 2) == doctest::Approx(T * T + 1.0).epsilon(1e-8));
  CHECK(C(1, 1) == doctest::Approx(1.0));
  CHECK(C(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("cauchy_green basics") {
  Mat3 C = cauchy_green(Mat3::identity());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(C(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));

  Mat3 g;
  g.m = {1, 0.3, -0.2, 0.1, 1.1, 0.4, -0.5, 0.2, 0.9};
  const double d = det(g);
  Mat3 cg = cauchy_green(g);
  CHECK(det(cg) == doctest::Approx(d * d).epsilon(1e-12));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(cg(i, j) == doctest::Approx(cg(j, i)).epsilon(1e-12));
}

TEST_CASE("steady abc: forward-backward consistency") {
  auto f = make_steady_abc();
  IntegratorConfig cfg;  // dt = 0.01
  Vec3 x0{1.0, 2.0, 3.0};
  Vec3 fwd = advect_point(*f, x0, 0.0, 1.0, cfg);
  Vec3 back = advect_point(*f, fwd, 1.0, 0.0, cfg);
  CHECK(norm(back - x0) < 1e-6);
}

TEST_CASE("short-time gradient matches I + T grad(v)") {
  auto f = make_steady_abc();
  const double T = 1e-3;
  Vec3 x0{1.3, 0.8, 2.1};
  IntegratorConfig cfg;
  cfg.dt = 1e-4;
  Mat3 g = flow_gradient(*f, x0, 0.0, T, cfg);
  // analytic jacobian of the steady field
  const double A = std::sqrt(3.0), B = std::sqrt(2.0), C = 1.0;
  Mat3 J{};
  J(0, 1) = -C * std::sin(x0.y);
  J(0, 2) = A * std::cos(x0.z);
  J(1, 0) = B * std::cos(x0.x);
  J(1, 2) = -A * std::sin(x0.z);
  J(2, 0) = -B * std::sin(x0.x);
  J(2, 1) = C * std::cos(x0.y);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double expect = (i == j ? 1.0 : 0.0) + T * J(i, j);
      CHECK(std::fabs(g(i, j) - expect) < 10.0 * T * T);
    }
}

TEST_CASE("volume preservation and flow map sample consistency") {
  auto f = make_steady_abc();
  IntegratorConfig cfg;
  cfg.dt = 0.01;
  for (double x = 0.5; x < 6.0; x += 2.1)
    for (double y = 0.4; y < 6.0; y += 2.3) {
      FlowMapSample s = flow_map_sample(*f, {x, y, 0.5 * (x + y)}, 0.0, 5.0, cfg);
      CHECK(std::fabs(det(s.gradF) - 1.0) <= 1e-3);
      // symmetric C
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(s.C(i, j) == doctest::Approx(s.C(j, i)).epsilon(1e-12));
      // matches the standalone operations
      CHECK(norm(s.F_val - advect_point(*f, s.x0, 0.0, 5.0, cfg)) == doctest::Approx(0.0));
      Mat3 g = flow_gradient(*f, s.x0, 0.0, 5.0, cfg);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(s.gradF(i, j) == doctest::Approx(g(i, j)).epsilon(1e-12));
    }
}

TEST_CASE("gradient Richardson consistency") {
  auto f = make_steady_abc();
  IntegratorConfig c1, c2;
  c1.grad_h = 2e-4;
  c2.grad_h = 1e-4;
  Mat3 g1 = flow_gradient(*f, {1, 2, 3}, 0.0, 2.0, c1);
  Mat3 g2 = flow_gradient(*f, {1, 2, 3}, 0.0, 2.0, c2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(std::fabs(g1(i, j) - g2(i, j)) < 1e-5);
}

TEST_CASE("backward gradient inverts the forward gradient") {
  auto f = make_steady_abc();
  IntegratorConfig cfg;
  Vec3 x0{2.0, 1.0, 0.5};
  Vec3 x1 = advect_point(*f, x0, 0.0, 1.0, cfg);
  Mat3 fwd = flow_gradient(*f, x0, 0.0, 1.0, cfg);
  Mat3 back = flow_gradient(*f, x1, 1.0, 0.0, cfg);
  Mat3 P = back * fwd;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(std::fabs(P(i, j) - (i == j ? 1.0 : 0.0)) < 1e-4);
}

TEST_CASE("lockstep batch advection equals scalar advection") {
  auto f = make_periodic_abc();
  IntegratorConfig cfg;
  std::vector<Vec3> pts{{1, 2, 3}, {0.5, 4.4, 2.2}, {3.3, 0.1, 5.5}};
  std::vector<Vec3> batch = pts;
  advect_points(*f, batch, 0.0, 2.0, cfg);
  for (size_t i = 0; i < pts.size(); ++i)
    CHECK(norm(batch[i] - advect_point(*f, pts[i], 0.0, 2.0, cfg)) == 0.0);
}
