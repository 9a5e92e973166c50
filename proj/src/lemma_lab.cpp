#include "schwarz/lemma_lab.hpp"

#include "schwarz/errors.hpp"
#include "schwarz/mollifier.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace schwarz {

using std::numbers::pi;

namespace {

// int_0^d exp(k t) dt without cancellation for small k.
double exp_segment(double k, double d) {
  const double t = k * d;
  return std::abs(t) < 1e-300 ? d : std::expm1(t) / k;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

LogConcaveDiffeo::LogConcaveDiffeo(std::vector<double> x, std::vector<double> h) : x_(std::move(x)), h_(std::move(h)) {
  if (x_.size() < 2 || x_.size() != h_.size()) throw InvalidInput("log-concave diffeo needs matching knots, at least 2");
  if (x_.front() != -1.0 || x_.back() != 1.0) throw InvalidInput("log-concave diffeo knots must run from -1 to 1");
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (!(x_[i] > x_[i - 1])) throw InvalidInput("log-concave diffeo knots must increase");
  }
  const auto k = slopes();
  for (std::size_t i = 1; i < k.size(); ++i) {
    if (k[i] > k[i - 1]) throw InvalidInput("log-concave diffeo needs decreasing slopes");
  }
  cumulative_.assign(x_.size(), 0.0);
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
    cumulative_[i + 1] = cumulative_[i] + std::exp(h_[i]) * exp_segment(k[i], x_[i + 1] - x_[i]);
  }
  scale_ = 2 / cumulative_.back();
}

LogConcaveDiffeo LogConcaveDiffeo::identity() { return LogConcaveDiffeo({-1.0, 1.0}, {0.0, 0.0}); }

std::vector<double> LogConcaveDiffeo::slopes() const {
  std::vector<double> k;
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) k.push_back((h_[i + 1] - h_[i]) / (x_[i + 1] - x_[i]));
  return k;
}

std::size_t LogConcaveDiffeo::segment(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const auto i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - x_.begin() - 1));
  return std::min(i, x_.size() - 2);
}

double LogConcaveDiffeo::value(double x) const {
  if (!(x >= -1 && x <= 1)) throw DomainError("log-concave diffeo is defined on [-1, 1]");
  const std::size_t i = segment(x);
  const double k = (h_[i + 1] - h_[i]) / (x_[i + 1] - x_[i]);
  return -1 + scale_ * (cumulative_[i] + std::exp(h_[i]) * exp_segment(k, x - x_[i]));
}

double LogConcaveDiffeo::derivative(double x) const { return std::exp(log_derivative(x)); }

double LogConcaveDiffeo::log_derivative(double x) const {
  if (!(x >= -1 && x <= 1)) throw DomainError("log-concave diffeo is defined on [-1, 1]");
  const std::size_t i = segment(x);
  const double t = (x - x_[i]) / (x_[i + 1] - x_[i]);
  return std::log(scale_) + (1 - t) * h_[i] + t * h_[i + 1];
}

LogConcaveDiffeo generate_logconcave(std::uint64_t seed, int knot_count) {
  if (knot_count < 2) throw InvalidInput("generate_logconcave needs at least 2 knots");
  std::mt19937_64 rng(seed);
  std::vector<double> x{-1.0};
  std::vector<double> interior;
  for (int i = 0; i < knot_count - 2; ++i) interior.push_back(-1 + 2 * uniform01(rng));
  std::sort(interior.begin(), interior.end());
  for (double v : interior) {
    if (v > x.back() && v < 1) x.push_back(v);
  }
  x.push_back(1.0);
  std::vector<double> k;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) k.push_back(-5 + 10 * uniform01(rng));
  std::sort(k.begin(), k.end(), std::greater<>());
  std::vector<double> h{0.0};
  for (std::size_t i = 0; i < k.size(); ++i) h.push_back(h.back() + k[i] * (x[i + 1] - x[i]));
  return LogConcaveDiffeo(std::move(x), std::move(h));
}

std::vector<double> lemma_grid(int count, double margin) {
  if (count < 2) throw InvalidInput("lemma_grid needs at least 2 points");
  std::vector<double> grid;
  const double lo = -1 + margin;
  const double hi = 1 - margin;
  for (int i = 0; i < count; ++i) grid.push_back(lo + (hi - lo) * i / (count - 1));
  return grid;
}

SlackScan propi1_scan(const ScalarFn& f, const ScalarFn& fprime, std::span<const double> grid) {
  SlackScan scan{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), 0.0};
  for (double x : grid) {
    const double fx = f(x);
    const double slack = fprime(x) * (1 - x * x) - (1 - fx * fx);
    if (!(slack >= scan.min_slack)) {
      scan.min_slack = slack;
      scan.worst = x;
    }
    scan.max_slack = std::max(scan.max_slack, slack);
  }
  return scan;
}

SlackScan propi1_scan(const LogConcaveDiffeo& diffeo, std::span<const double> grid) {
  return propi1_scan([&diffeo](double x) { return diffeo.value(x); },
                     [&diffeo](double x) { return diffeo.derivative(x); }, grid);
}

double propi1_slack(const LogConcaveDiffeo& diffeo, std::span<const double> grid) {
  return propi1_scan(diffeo, grid).min_slack;
}

Propi1Batch propi1_batch(std::uint64_t seed, int trials, std::span<const double> grid, double tol) {
  if (trials < 1) throw InvalidInput("propi1_batch needs trials >= 1");
  std::mt19937_64 master(seed);
  Propi1Batch batch{.trials = trials, .min_slack = std::numeric_limits<double>::infinity()};
  for (int i = 0; i < trials; ++i) {
    Propi1Trial trial;
    trial.seed = master();
    trial.knot_count = 2 + static_cast<int>(master() % 11);
    trial.scan = propi1_scan(generate_logconcave(trial.seed, trial.knot_count), grid);
    if (!(trial.scan.min_slack >= batch.min_slack)) {
      batch.min_slack = trial.scan.min_slack;
      batch.worst = trial;
    }
    if (!(trial.scan.min_slack >= -tol)) batch.failures.push_back(trial);
  }
  return batch;
}

double r_ratio(double k, double x) {
  if (k == 0) throw PreconditionViolated("r_ratio needs k != 0");
  return r_ratio_t<double>(k, x);
}

double dif(double k, double x) { return (1 - x * x) * (r_ratio(k, x) - 1); }

double dif_third(double k, double x) {
  // sinh(kx)/sinh(k) via exponentials keeps large k finite.
  const double ak = std::abs(k);
  const double ratio = std::exp(ak * (std::abs(x) - 1)) * -std::expm1(-2 * ak * std::abs(x)) / -std::expm1(-2 * ak);
  return -2 * k * k * std::copysign(ratio, x);
}

DifDiagnostics dif_diagnostics(double k, std::span<const double> grid) {
  if (!(k > 0)) throw PreconditionViolated("dif_diagnostics needs k > 0");
  DifDiagnostics d{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (double x : grid) {
    if (!(x >= 0 && x <= 1)) throw DomainError("dif_diagnostics grid must lie in [0, 1]");
    d.max_dif = std::max(d.max_dif, dif(k, x));
    d.max_dif_third = std::max(d.max_dif_third, dif_third(k, x));
  }
  const double h = 1e-5;
  d.dif_at_one = dif(k, 1.0);
  d.dif_prime_at_zero = (dif(k, h) - dif(k, -h)) / (2 * h);
  d.dif_prime_at_one = (3 * dif(k, 1.0) - 4 * dif(k, 1 - h) + dif(k, 1 - 2 * h)) / (2 * h);
  return d;
}

double lema_slack(const Metric1D& metric, double v) {
  if (!is_unimodal(metric)) throw PreconditionViolated("'" + metric.name() + "' is not unimodal about 0");
  const double r = mass(metric);
  const double tail = metric.primitive_at_hi() - metric.primitive(v);
  return pi / (2 * r) * (1 - std::abs(v)) * metric.density(v) - std::sin(pi * tail / (2 * r));
}

double sharpness_ratio(double a, double s) {
  if (!(s > 0 && s < 1) || !(a > 0) || !(a * s * s > 0 && a * s * s < 1)) {
    throw ParameterOutOfRange("sharpness_ratio needs s in (0, 1), a > 0 and a s^2 in (0, 1)");
  }
  return sharpness_ratio_t<double>(a, s);
}

double sharpness_ratio_direct(double a, double s) {
  const PiecewiseQuadraticMap psi = psi_family(a, s);
  // One-sided slope from the right; psi' is continuous at s anyway.
  return std::cos(pi / 2 * psi.value(s)) / ((1 - s * s) * pi / 2 * psi.derivative(s));
}

std::vector<SweepRecord> sharpness_sweep(int n_max) {
  if (n_max < 2) throw InvalidInput("sharpness_sweep needs n_max >= 2");
  std::vector<SweepRecord> rows;
  for (int n = 2; n <= n_max; ++n) {
    const double s = 1.0 / n;
    const double u = static_cast<double>(n - 1) * (n - 1) / (static_cast<double>(n) * n);
    const double a = u / (s * s);
    rows.push_back({{{"n", n}, {"s", s}, {"u", u}, {"a", a}}, sharpness_ratio(a, s)});
  }
  return rows;
}

std::vector<SweepRecord> r_ratio_sweep(double k_max, int k_count, double x_max, int x_count) {
  if (k_count < 1 || x_count < 2) throw InvalidInput("r_ratio_sweep needs k_count >= 1 and x_count >= 2");
  std::vector<SweepRecord> rows;
  for (int i = 1; i <= k_count; ++i) {
    const double k = k_max * i / k_count;
    for (int j = 0; j < x_count; ++j) {
      const double x = x_max * j / (x_count - 1);
      rows.push_back({{{"k", k}, {"x", x}}, r_ratio(k, x)});
    }
  }
  return rows;
}

}  // namespace schwarz
