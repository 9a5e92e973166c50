#pragma once

// Scalar lemmas behind the gradient bounds: randomized checks of
// f'(x)(1 - x^2) >= 1 - f(x)^2 for log-concave f', the proof quantities
// r(k, x) and dif, and the sharpness family for unimodal metrics.

#include "schwarz/metric.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace schwarz {

/// Increasing bijection of [-1, 1] with f' = C exp(h), h piecewise linear and
/// concave through the knots (x_i, h_i). C makes f(1) = 1.
class LogConcaveDiffeo {
 public:
  LogConcaveDiffeo(std::vector<double> x, std::vector<double> h);
  static LogConcaveDiffeo identity();

  double value(double x) const;       // f
  double derivative(double x) const;  // f'
  double log_derivative(double x) const;  // h + log C
  /// Slope of h on each segment (strictly decreasing).
  std::vector<double> slopes() const;

  const std::vector<double>& knots_x() const { return x_; }
  const std::vector<double>& knots_h() const { return h_; }
  double normalization() const { return scale_; }

 private:
  std::size_t segment(double x) const;

  std::vector<double> x_;
  std::vector<double> h_;
  std::vector<double> cumulative_;  // integral of exp(h) from -1 to x_i
  double scale_ = 1.0;
};

/// Deterministic in `seed`: knot abscissae uniform in (-1, 1), slopes from a
/// uniform sample on [-5, 5] sorted decreasing.
LogConcaveDiffeo generate_logconcave(std::uint64_t seed, int knot_count);

/// `count` points from -1 + margin to 1 - margin.
std::vector<double> lemma_grid(int count = 2001, double margin = 1e-4);

struct SlackScan {
  double min_slack = 0.0;
  double max_slack = 0.0;
  double worst = 0.0;  // abscissa of the minimum
};

/// f'(x)(1 - x^2) - (1 - f(x)^2) over the grid.
SlackScan propi1_scan(const ScalarFn& f, const ScalarFn& fprime, std::span<const double> grid);
SlackScan propi1_scan(const LogConcaveDiffeo& diffeo, std::span<const double> grid);
double propi1_slack(const LogConcaveDiffeo& diffeo, std::span<const double> grid);

struct Propi1Trial {
  std::uint64_t seed = 0;
  int knot_count = 0;
  SlackScan scan{};
};

struct Propi1Batch {
  int trials = 0;
  double min_slack = 0.0;
  Propi1Trial worst{};
  /// Trials whose min slack is below -tol, for replay.
  std::vector<Propi1Trial> failures{};
};

/// `trials` diffeos with per-trial seeds and knot counts (2 to 12) drawn
/// from one generator seeded with `seed`.
Propi1Batch propi1_batch(std::uint64_t seed, int trials, std::span<const double> grid, double tol = 1e-9);

/// log(sinh t / t), accurate for small t and free of overflow for large t.
template <typename Scalar>
Scalar log_sinhc(Scalar t) {
  using std::abs, std::exp, std::log, std::log1p, std::sinh;
  t = abs(t);
  if (t < Scalar(1e-4)) return t * t / 6;
  if (t < Scalar(20)) return log(sinh(t) / t);
  return t + log1p(-exp(-2 * t)) - log(2 * t);
}

/// r(k, x) = 2 (cosh k - cosh kx) csch k / (k (1 - x^2)), evaluated as
/// sinhc(k(1+x)/2) sinhc(k(1-x)/2) / sinhc(k). PreconditionViolated for k = 0.
template <typename Scalar>
Scalar r_ratio_t(Scalar k, Scalar x) {
  using std::exp;
  return exp(log_sinhc<Scalar>(k * (1 + x) / 2) + log_sinhc<Scalar>(k * (1 - x) / 2) - log_sinhc<Scalar>(k));
}
double r_ratio(double k, double x);

/// dif(x) = (1 - x^2)(r(k, x) - 1).
double dif(double k, double x);
/// Closed-form third derivative -2 k^2 sinh(kx) / sinh k.
double dif_third(double k, double x);

struct DifDiagnostics {
  double max_dif = 0.0;
  double max_dif_third = 0.0;
  double dif_at_one = 0.0;        // closed form at x = 1
  double dif_prime_at_zero = 0.0;  // central difference
  double dif_prime_at_one = 0.0;   // one-sided difference
};
DifDiagnostics dif_diagnostics(double k, std::span<const double> grid);

/// (pi/2r)(1 - |v|) R(v) - sin(pi int_v^1 R / (2r)). PreconditionViolated
/// unless R is unimodal about 0.
double lema_slack(const Metric1D& metric, double v);

/// 2 sin[(pi/2)(1-s)(1-u)] / (pi (1-s^2)(1-u)) with u = a s^2, written as
/// sinc((pi/2)(1-s)(1-u)) / (1+s). ParameterOutOfRange outside s, u in (0, 1).
template <typename Scalar>
Scalar sharpness_ratio_t(Scalar a, Scalar s) {
  using std::sin;
  const Scalar u = a * s * s;
  const Scalar x = std::numbers::pi_v<Scalar> / 2 * (1 - s) * (1 - u);
  const Scalar sinc = x == 0 ? Scalar(1) : sin(x) / x;
  return sinc / (1 + s);
}
double sharpness_ratio(double a, double s);
/// cos(phi(s)) / ((1 - s^2) phi'(s)) with phi = (pi/2) psi, psi from psi_family.
double sharpness_ratio_direct(double a, double s);

struct SweepRecord {
  std::map<std::string, double> parameters;
  double ratio = 0.0;
};

/// n = 2..n_max with s = 1/n, u = (n-1)^2/n^2.
std::vector<SweepRecord> sharpness_sweep(int n_max);
/// r(k, x) on k in (0, k_max] (k_count points) times x in [0, x_max] (x_count points).
std::vector<SweepRecord> r_ratio_sweep(double k_max, int k_count, double x_max, int x_count);

}  // namespace schwarz
