#pragma once

#include <string>
#include <vector>

namespace lcs {

// Tabulated scalar signal F(t) with natural cubic spline interpolation.
// Values at sample nodes are reproduced exactly; first derivative is
// continuous between nodes.
class ForcingSignal {
 public:
  ForcingSignal() = default;
  ForcingSignal(std::vector<double> times, std::vector<double> values);

  double t_min() const { return t_.empty() ? 0.0 : t_.front(); }
  double t_max() const { return t_.empty() ? 0.0 : t_.back(); }
  bool covers(double t0, double t1) const;
  bool empty() const { return t_.empty(); }

  // Throws std::out_of_range outside [t_min, t_max].
  double value(double t) const;

  double max_abs() const;
  void scale(double factor);

  const std::vector<double>& times() const { return t_; }
  const std::vector<double>& values() const { return f_; }

  void save_csv(const std::string& path) const;
  static ForcingSignal load_csv(const std::string& path);

 private:
  void build_spline();

  std::vector<double> t_;
  std::vector<double> f_;
  std::vector<double> d2_;  // second derivatives at nodes
};

struct DuffingParams {
  double delta = 0.15;   // damping
  double gamma = 0.3;    // drive amplitude
  double omega = 1.0;    // drive frequency
  double kappa = 1.0;    // output scale
  double transient = 50.0;  // discarded before sampling starts
  double q0 = 1.0;       // initial condition (q, qdot)
  double qdot0 = 0.0;
};

// Integrates qdd = q - q^3 - delta*qd + gamma*cos(omega t) from (q0, qdot0),
// discards the transient, and returns F(t) = kappa * q(t) sampled at dt over
// [t_begin, t_end].
ForcingSignal generate_duffing_forcing(const DuffingParams& p, double t_begin, double t_end,
                                       double dt);

// Same, but kappa is chosen so that sup |F| equals target_amp over the span.
ForcingSignal generate_duffing_forcing_scaled(DuffingParams p, double t_begin, double t_end,
                                              double dt, double target_amp);

}  // namespace lcs
