#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "lcs/flow_models.hpp"
#include "lcs/forcing.hpp"

using namespace lcs;

TEST_CASE("steady abc at the origin") {
  auto f = make_steady_abc();
  Vec3 v = f->eval({0, 0, 0}, 0.0);
  // sin 0 = 0, cos 0 = 1: (C, A, B)
  CHECK(v.x == doctest::Approx(1.0));
  CHECK(v.y == doctest::Approx(std::sqrt(3.0)));
  CHECK(v.z == doctest::Approx(std::sqrt(2.0)));

  AbcParams p{2.0, 3.0, 4.0};
  auto g = make_steady_abc(p);
  Vec3 w = g->eval({0, 0, 0}, 17.0);
  CHECK(w.x == doctest::Approx(4.0));
  CHECK(w.y == doctest::Approx(2.0));
  CHECK(w.z == doctest::Approx(3.0));
}

TEST_CASE("periodic abc reduces to steady at t = 0") {
  auto s = make_steady_abc();
  auto p = make_periodic_abc();
  for (double x = 0.3; x < 6.0; x += 1.7)
    for (double y = 0.1; y < 6.0; y += 1.9) {
      Vec3 a = s->eval({x, y, 0.5 * x}, 0.0);
      Vec3 b = p->eval({x, y, 0.5 * x}, 0.0);
      CHECK(norm(a - b) == doctest::Approx(0.0));
    }
  // and differs away from t = 0
  CHECK(norm(s->eval({1, 1, 1}, 1.0) - p->eval({1, 1, 1}, 1.0)) > 1e-4);
}

TEST_CASE("abc spatial periodicity is exact on all axes") {
  auto fields = {make_steady_abc(), make_periodic_abc()};
  const double P = 2.0 * M_PI;
  for (const auto& f : fields) {
    REQUIRE(f->spatial_period().has_value());
    for (double t : {0.0, 0.7, 3.1}) {
      Vec3 x{1.1, 2.3, 4.5};
      Vec3 v = f->eval(x, t);
      // x + 2 pi is itself rounded, so exact equality is unattainable
      CHECK(norm(f->eval({x.x + P, x.y, x.z}, t) - v) <= 1e-14);
      CHECK(norm(f->eval({x.x, x.y + P, x.z}, t) - v) <= 1e-14);
      CHECK(norm(f->eval({x.x, x.y, x.z + P}, t) - v) <= 1e-14);
    }
  }
}

TEST_CASE("divergence estimates") {
  auto abc = make_steady_abc();
  const double h = 1e-4;
  for (double x = 0.2; x < 6.0; x += 1.3)
    CHECK(std::fabs(divergence(*abc, {x, 0.7 * x, 1.3 * x}, 0.0, h)) <= 10.0 * h * h);

  ShearProfiles sp;
  sp.u = [](double z, double) { return z * z; };
  sp.v = [](double z, double) { return std::sin(z); };
  sp.w = [](double) { return 0.5; };
  auto shear = make_parallel_shear(sp);
  CHECK(std::fabs(divergence(*shear, {1, 1, 1}, 0.0, h)) <= 10.0 * h * h);

  auto lin = make_analytic_field("vx", [](const Vec3& p, double) { return Vec3{p.x, 0, 0}; });
  CHECK(divergence(*lin, {1, 2, 3}, 0.0, h) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("chaotic abc with zero forcing equals steady; time span enforced") {
  std::vector<double> t, z;
  for (int i = 0; i <= 100; ++i) {
    t.push_back(0.1 * i);
    z.push_back(0.0);
  }
  auto cz = make_chaotic_abc({}, ForcingSignal(t, z));
  auto s = make_steady_abc();
  CHECK(norm(cz->eval({1, 2, 3}, 5.0) - s->eval({1, 2, 3}, 5.0)) == doctest::Approx(0.0));
  REQUIRE(cz->time_span().has_value());
  CHECK_THROWS_AS((void)cz->eval({1, 2, 3}, 11.0), std::out_of_range);

  // Printed y-equation variant differs when A != 1 even at F = 0.
  auto cp = make_chaotic_abc({}, ForcingSignal(t, z), true);
  Vec3 a = cz->eval({1, 2, 3}, 5.0), b = cp->eval({1, 2, 3}, 5.0);
  CHECK(a.x == doctest::Approx(b.x));
  CHECK(a.z == doctest::Approx(b.z));
  CHECK(std::fabs(a.y - b.y) > 1e-3);
}

TEST_CASE("eval_batch matches pointwise eval") {
  auto fields = {make_steady_abc(), make_periodic_abc()};
  for (const auto& f : fields) {
    Vec3 pts[7], out[7];
    for (int i = 0; i < 7; ++i) pts[i] = {0.3 * i, 1.0 + 0.2 * i, 2.0 - 0.1 * i};
    f->eval_batch(pts, 7, 0.9, out);
    for (int i = 0; i < 7; ++i) CHECK(norm(out[i] - f->eval(pts[i], 0.9)) == 0.0);
  }
}
