#include "lcs/forcing.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lcs {

ForcingSignal::ForcingSignal(std::vector<double> times, std::vector<double> values)
    : t_(std::move(times)), f_(std::move(values)) {
  if (t_.size() != f_.size()) throw std::invalid_argument("forcing: size mismatch");
  if (t_.size() < 2) throw std::invalid_argument("forcing: need at least 2 samples");
  for (size_t i = 1; i < t_.size(); ++i)
    if (t_[i] <= t_[i - 1]) throw std::invalid_argument("forcing: times not strictly increasing");
  build_spline();
}

void ForcingSignal::build_spline() {
  // Natural cubic spline: tridiagonal solve for second derivatives.
  const size_t n = t_.size();
  d2_.assign(n, 0.0);
  if (n < 3) return;
  std::vector<double> u(n, 0.0);
  for (size_t i = 1; i + 1 < n; ++i) {
    const double sig = (t_[i] - t_[i - 1]) / (t_[i + 1] - t_[i - 1]);
    const double p = sig * d2_[i - 1] + 2.0;
    d2_[i] = (sig - 1.0) / p;
    u[i] = (f_[i + 1] - f_[i]) / (t_[i + 1] - t_[i]) - (f_[i] - f_[i - 1]) / (t_[i] - t_[i - 1]);
    u[i] = (6.0 * u[i] / (t_[i + 1] - t_[i - 1]) - sig * u[i - 1]) / p;
  }
  for (size_t k = n - 1; k-- > 1;) d2_[k] = d2_[k] * d2_[k + 1] + u[k];
  d2_[0] = d2_[n - 1] = 0.0;
}

bool ForcingSignal::covers(double t0, double t1) const {
  if (t_.empty()) return false;
  const double lo = std::min(t0, t1), hi = std::max(t0, t1);
  return lo >= t_min() && hi <= t_max();
}

double ForcingSignal::value(double t) const {
  if (t_.empty()) throw std::out_of_range("forcing: empty signal");
  if (t < t_.front() || t > t_.back())
    throw std::out_of_range("forcing: t outside signal coverage");
  const auto it = std::upper_bound(t_.begin(), t_.end(), t);
  size_t hi = static_cast<size_t>(it - t_.begin());
  if (hi >= t_.size()) hi = t_.size() - 1;
  if (hi == 0) hi = 1;
  const size_t lo = hi - 1;
  const double h = t_[hi] - t_[lo];
  const double a = (t_[hi] - t) / h;
  const double b = (t - t_[lo]) / h;
  return a * f_[lo] + b * f_[hi] +
         ((a * a * a - a) * d2_[lo] + (b * b * b - b) * d2_[hi]) * h * h / 6.0;
}

double ForcingSignal::max_abs() const {
  double m = 0.0;
  for (double v : f_) m = std::max(m, std::fabs(v));
  return m;
}

void ForcingSignal::scale(double factor) {
  for (double& v : f_) v *= factor;
  for (double& v : d2_) v *= factor;
}

void ForcingSignal::save_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("forcing: cannot open " + path);
  out << "t,F\n";
  out.precision(17);
  for (size_t i = 0; i < t_.size(); ++i) out << t_[i] << "," << f_[i] << "\n";
}

ForcingSignal ForcingSignal::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("forcing: cannot open " + path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> t, f;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string a, b;
    std::getline(ss, a, ',');
    std::getline(ss, b, ',');
    t.push_back(std::stod(a));
    f.push_back(std::stod(b));
  }
  return ForcingSignal(std::move(t), std::move(f));
}

ForcingSignal generate_duffing_forcing(const DuffingParams& p, double t_begin, double t_end,
                                       double dt) {
  if (!(dt > 0.0) || !(t_end > t_begin))
    throw std::invalid_argument("duffing: need t_end > t_begin and dt > 0");

  double q = p.q0, qd = p.qdot0;
  auto accel = [&p](double q_, double qd_, double t_) {
    return q_ - q_ * q_ * q_ - p.delta * qd_ + p.gamma * std::cos(p.omega * t_);
  };
  auto rk4_step = [&](double t_, double h) {
    const double k1q = qd, k1v = accel(q, qd, t_);
    const double k2q = qd + 0.5 * h * k1v, k2v = accel(q + 0.5 * h * k1q, qd + 0.5 * h * k1v, t_ + 0.5 * h);
    const double k3q = qd + 0.5 * h * k2v, k3v = accel(q + 0.5 * h * k2q, qd + 0.5 * h * k2v, t_ + 0.5 * h);
    const double k4q = qd + h * k3v, k4v = accel(q + h * k3q, qd + h * k3v, t_ + h);
    q += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
    qd += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  };

  // Transient: integrated before t_begin so stored samples lie near the attractor.
  const double t_start = t_begin - p.transient;
  const long transient_steps = std::lround(p.transient / dt);
  double t = t_start;
  for (long i = 0; i < transient_steps; ++i) {
    rk4_step(t, dt);
    t += dt;
  }

  std::vector<double> ts, fs;
  const long n = std::lround((t_end - t_begin) / dt);
  ts.reserve(static_cast<size_t>(n) + 1);
  fs.reserve(static_cast<size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) {
    ts.push_back(t_begin + static_cast<double>(i) * dt);
    fs.push_back(p.kappa * q);
    rk4_step(ts.back(), dt);
  }
  return ForcingSignal(std::move(ts), std::move(fs));
}

ForcingSignal generate_duffing_forcing_scaled(DuffingParams p, double t_begin, double t_end,
                                              double dt, double target_amp) {
  p.kappa = 1.0;
  ForcingSignal raw = generate_duffing_forcing(p, t_begin, t_end, dt);
  const double m = raw.max_abs();
  if (m > 0.0) raw.scale(target_amp / m);
  return raw;
}

}  // namespace lcs
