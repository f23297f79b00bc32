#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "lcs/forcing.hpp"

using namespace lcs;

TEST_CASE("spline reproduces samples exactly and rejects extrapolation") {
  std::vector<double> t, f;
  for (int i = 0; i <= 20; ++i) {
    t.push_back(0.1 * i);
    f.push_back(std::sin(3.0 * 0.1 * i));
  }
  ForcingSignal sig(t, f);
  for (size_t i = 0; i < t.size(); ++i) CHECK(sig.value(t[i]) == doctest::Approx(f[i]).epsilon(1e-14));
  CHECK(sig.covers(0.0, 2.0));
  CHECK_FALSE(sig.covers(-0.5, 1.0));
  CHECK_THROWS_AS((void)sig.value(-0.01), std::out_of_range);
  CHECK_THROWS_AS((void)sig.value(2.01), std::out_of_range);
  // Interpolation between nodes stays close to the smooth generator.
  for (double x = 0.05; x < 2.0; x += 0.1)
    CHECK(sig.value(x) == doctest::Approx(std::sin(3.0 * x)).epsilon(1e-3));
}

TEST_CASE("unforced damped oscillator decays to an equilibrium") {
  DuffingParams p;
  p.gamma = 0.0;
  p.delta = 0.2;
  p.kappa = 1.0;
  p.transient = 0.0;
  ForcingSignal sig = generate_duffing_forcing(p, 0.0, 200.0, 0.01);
  // Stable equilibria of qdd = q - q^3 - delta qd are q = +-1.
  CHECK(std::fabs(std::fabs(sig.value(200.0)) - 1.0) < 1e-4);
}

TEST_CASE("zero kappa gives the zero signal") {
  DuffingParams p;
  p.kappa = 0.0;
  ForcingSignal sig = generate_duffing_forcing(p, 0.0, 10.0, 0.01);
  CHECK(sig.max_abs() == 0.0);
}

TEST_CASE("scaled default forcing is bounded and aperiodic-looking") {
  DuffingParams p;  // delta=0.15, gamma=0.3, omega=1
  ForcingSignal sig = generate_duffing_forcing_scaled(p, 0.0, 100.0, 0.01, 0.1);
  CHECK(sig.max_abs() == doctest::Approx(0.1).epsilon(1e-10));
  CHECK(sig.max_abs() <= 0.15);
  // Not settled at an equilibrium: the scaled signal keeps changing sign or
  // magnitude over the window.
  double lo = 1e9, hi = -1e9;
  for (double t = 50.0; t <= 100.0; t += 0.37) {
    lo = std::min(lo, sig.value(t));
    hi = std::max(hi, sig.value(t));
  }
  CHECK(hi - lo > 0.05);
}

TEST_CASE("csv round trip") {
  DuffingParams p;
  ForcingSignal sig = generate_duffing_forcing_scaled(p, 0.0, 5.0, 0.01, 0.1);
  const char* path = "forcing_rt.csv";
  sig.save_csv(path);
  ForcingSignal back = ForcingSignal::load_csv(path);
  REQUIRE(back.times().size() == sig.times().size());
  for (size_t i = 0; i < back.times().size(); i += 37) {
    CHECK(back.times()[i] == sig.times()[i]);
    CHECK(back.values()[i] == sig.values()[i]);
  }
  std::remove(path);
}
