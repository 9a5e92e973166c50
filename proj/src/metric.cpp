#include "schwarz/metric.hpp"

#include "schwarz/errors.hpp"
#include "schwarz/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>

namespace schwarz {

namespace {

constexpr int kPrimitiveCells = 256;
constexpr double kQuadratureTol = 1e-12;
constexpr double kDivergenceCeiling = 1e12;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string describe(double u, double lo, double hi) {
  std::ostringstream os;
  os.precision(17);
  os << u << " is not inside (" << lo << ", " << hi << ")";
  return os.str();
}

}  // namespace

namespace detail {

struct PrimitiveTable {
  std::vector<double> nodes;
  std::vector<double> values;  // integral of R from 0 to nodes[i]
  double at_lo = -kInf;
  double at_hi = kInf;
};

struct MetricState {
  Metric1D::Spec spec;
  std::once_flag table_once;
  PrimitiveTable table;

  double raw(double u) const { return spec.density(u); }
  double dist(double u) const { return std::min(u - spec.lo, spec.hi - u); }
  const PrimitiveTable& primitive_table();
};

const PrimitiveTable& MetricState::primitive_table() {
  std::call_once(table_once, [this] {
    const double lo = spec.lo;
    const double hi = spec.hi;
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < 0.0 && 0.0 < hi)) {
      throw DomainError("primitive needs a bounded domain containing 0, got (" + std::to_string(lo) + ", " +
                        std::to_string(hi) + ")");
    }
    auto f = [this](double u) { return spec.density(u); };
    PrimitiveTable t;
    const double width = (hi - lo) / kPrimitiveCells;
    for (int i = 1; i < kPrimitiveCells; ++i) t.nodes.push_back(lo + i * width);
    // Anchor the cumulative sum at the node closest to zero, then shift.
    std::size_t anchor = 0;
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
      if (std::abs(t.nodes[i]) < std::abs(t.nodes[anchor])) anchor = i;
    }
    t.values.assign(t.nodes.size(), 0.0);
    t.values[anchor] = numerics::adaptive_simpson(f, 0.0, t.nodes[anchor], kQuadratureTol / 16);
    const double cell_tol = kQuadratureTol / kPrimitiveCells;
    for (std::size_t i = anchor + 1; i < t.nodes.size(); ++i) {
      t.values[i] = t.values[i - 1] + numerics::adaptive_simpson(f, t.nodes[i - 1], t.nodes[i], cell_tol);
    }
    for (std::size_t i = anchor; i-- > 0;) {
      t.values[i] = t.values[i + 1] - numerics::adaptive_simpson(f, t.nodes[i], t.nodes[i + 1], cell_tol);
    }
    const auto upper = numerics::open_end_integral(f, t.nodes.back(), hi, kQuadratureTol / 4, kDivergenceCeiling);
    const auto lower = numerics::open_end_integral(f, t.nodes.front(), lo, kQuadratureTol / 4, kDivergenceCeiling);
    t.at_hi = upper ? t.values.back() + *upper : kInf;
    t.at_lo = lower ? t.values.front() + *lower : -kInf;
    table = std::move(t);
  });
  return table;
}

}  // namespace detail

Metric1D::Metric1D(Spec spec) : state_(std::make_shared<detail::MetricState>()) {
  if (!spec.density) throw InvalidInput("metric '" + spec.name + "' has no density");
  if (!(spec.lo < spec.hi)) throw InvalidInput("metric '" + spec.name + "' has an empty domain");
  state_->spec = std::move(spec);
}

const std::string& Metric1D::name() const { return state_->spec.name; }
double Metric1D::lo() const { return state_->spec.lo; }
double Metric1D::hi() const { return state_->spec.hi; }
bool Metric1D::contains(double u) const { return u > lo() && u < hi(); }
bool Metric1D::declares_nonnegative_curvature() const { return state_->spec.nonnegative_curvature; }
bool Metric1D::has_analytic_first_derivative() const { return static_cast<bool>(state_->spec.d_density); }
bool Metric1D::has_analytic_second_derivative() const {
  return state_->spec.d_density && state_->spec.d2_density;
}

double Metric1D::density(double u) const {
  if (!contains(u)) throw DomainError("density: " + describe(u, lo(), hi()));
  return state_->raw(u);
}

double first_difference_step(double u, double lo, double hi) {
  const double dist = std::min(u - lo, hi - u);
  const double h = std::min(std::max(1e-6, 1e-6 * std::abs(u)), 0.5 * dist);
  if (!(h > 1e-14 * std::max(1.0, std::abs(u)))) {
    throw DerivativeUnavailable("difference stencil at " + std::to_string(u) + " would leave the domain");
  }
  return h;
}

double second_difference_step(double u, double lo, double hi) {
  const double dist = std::min(u - lo, hi - u);
  const double h = std::min(1e-4 * std::max(1.0, std::abs(u)), 1e-3 * dist);
  if (!(h > 1e-12 * std::max(1.0, std::abs(u)))) {
    throw DerivativeUnavailable("second-difference stencil at " + std::to_string(u) + " would leave the domain");
  }
  return h;
}

double Metric1D::d_density(double u) const {
  if (!contains(u)) throw DomainError("d_density: " + describe(u, lo(), hi()));
  const auto& spec = state_->spec;
  if (spec.d_density) return spec.d_density(u);
  const double h = first_difference_step(u, lo(), hi());
  return (spec.density(u + h) - spec.density(u - h)) / (2 * h);
}

double Metric1D::d2_log_density(double u) const {
  if (!contains(u)) throw DomainError("d2_log_density: " + describe(u, lo(), hi()));
  const auto& spec = state_->spec;
  if (spec.d_density && spec.d2_density) {
    const double r = spec.density(u);
    const double r1 = spec.d_density(u);
    const double r2 = spec.d2_density(u);
    return (r * r2 - r1 * r1) / (r * r);
  }
  const double h = second_difference_step(u, lo(), hi());
  if (spec.d_density) {
    auto log_slope = [&](double t) { return spec.d_density(t) / spec.density(t); };
    return (log_slope(u + h) - log_slope(u - h)) / (2 * h);
  }
  const double lp = std::log(spec.density(u + h));
  const double l0 = std::log(spec.density(u));
  const double lm = std::log(spec.density(u - h));
  return (lp - 2 * l0 + lm) / (h * h);
}

Metric1D Metric1D::numeric_only() const {
  Spec spec = state_->spec;
  spec.d_density = nullptr;
  spec.d2_density = nullptr;
  spec.name += " (numeric derivatives)";
  return Metric1D(std::move(spec));
}

double Metric1D::primitive(double u) const {
  if (!contains(u)) throw DomainError("primitive: " + describe(u, lo(), hi()));
  const auto& t = state_->primitive_table();
  auto nearest = std::lower_bound(t.nodes.begin(), t.nodes.end(), u);
  std::size_t j = static_cast<std::size_t>(nearest - t.nodes.begin());
  if (j == t.nodes.size() || (j > 0 && u - t.nodes[j - 1] < t.nodes[j] - u)) --j;
  auto f = [this](double x) { return state_->spec.density(x); };
  // Pieces no longer than half the distance to the nearer edge, so a density
  // blowing up at the edge stays smooth on each piece.
  static const auto rule = numerics::gauss_legendre(16);
  double sum = 0.0;
  double a = t.nodes[j];
  while (a != u) {
    const double step = std::min(std::abs(u - a), state_->dist(a) / 2);
    const double b = std::abs(u - a) <= step ? u : a + std::copysign(step, u - a);
    sum += numerics::adaptive_gauss(rule, f, a, b, 1e-15, 12);
    a = b;
  }
  return t.values[j] + sum;
}

double Metric1D::primitive_at_lo() const { return state_->primitive_table().at_lo; }
double Metric1D::primitive_at_hi() const { return state_->primitive_table().at_hi; }

double Metric1D::inverse_primitive(double target) const {
  const auto& t = state_->primitive_table();
  if (!(target > t.at_lo && target < t.at_hi)) {
    std::ostringstream os;
    os.precision(17);
    os << "inverse_primitive: " << target << " is outside the image (" << t.at_lo << ", " << t.at_hi << ")";
    throw OutOfRange(os.str());
  }
  auto it = std::upper_bound(t.values.begin(), t.values.end(), target);
  const std::size_t k = static_cast<std::size_t>(it - t.values.begin());
  const double a = k == 0 ? lo() : t.nodes[k - 1];
  const double b = k == t.nodes.size() ? hi() : t.nodes[k];
  const double va = (k == 0 ? t.at_lo : t.values[k - 1]) - target;
  const double vb = (k == t.nodes.size() ? t.at_hi : t.values[k]) - target;
  if (va == 0.0) return a;

  const double scale =
      std::isfinite(t.at_lo) && std::isfinite(t.at_hi) ? (t.at_hi - t.at_lo) / 2 : std::max(1.0, std::abs(target));
  auto residual = [&](double u) { return primitive(u) - target; };
  auto slope = [&](double u) { return state_->spec.density(u); };
  const auto root = numerics::increasing_root(residual, slope, a, b, va, vb, 1e-13 * scale);
  if (!root.converged) throw NoConvergence("inverse_primitive did not converge for target " + std::to_string(target));
  return root.root;
}

// ---------------------------------------------------------------------------

double curvature_at(const Metric1D& metric, double u) {
  const double r = metric.density(u);
  return -metric.d2_log_density(u) / (r * r);
}

namespace {

void require_unit_interval(const Metric1D& metric, const char* op) {
  if (metric.lo() != -1.0 || metric.hi() != 1.0) {
    throw DomainError(std::string(op) + " needs a metric on (-1, 1); '" + metric.name() + "' lives on (" +
                      std::to_string(metric.lo()) + ", " + std::to_string(metric.hi()) + ")");
  }
}

}  // namespace

double mass(const Metric1D& metric) {
  require_unit_interval(metric, "mass");
  const double top = metric.primitive_at_hi();
  const double bottom = metric.primitive_at_lo();
  if (!std::isfinite(top) || !std::isfinite(bottom)) {
    throw NonIntegrable("metric '" + metric.name() + "' has infinite mass on (-1, 1)");
  }
  return (top - bottom) / 2;
}

double transform_H(const Metric1D& metric, double u) {
  mass(metric);
  const double centre = (metric.primitive_at_hi() + metric.primitive_at_lo()) / 2;
  return metric.primitive(u) - centre;
}

double inverse_H(const Metric1D& metric, double t) {
  const double r = mass(metric);
  if (!(std::abs(t) < r)) {
    throw OutOfRange("inverse_H: |" + std::to_string(t) + "| >= r = " + std::to_string(r));
  }
  const double centre = (metric.primitive_at_hi() + metric.primitive_at_lo()) / 2;
  return metric.inverse_primitive(t + centre);
}

LogConcavityReport log_concavity_report(const Metric1D& metric, std::span<const double> grid,
                                        double curvature_tolerance) {
  if (grid.empty()) throw InvalidInput("log_concavity_report needs a non-empty grid");
  LogConcavityReport report;
  report.min_curvature = kInf;
  report.exp_majorant_min_slack = kInf;
  const bool has_origin = metric.contains(0.0);
  const double r0 = has_origin ? metric.density(0.0) : 0.0;
  const double rate = has_origin ? metric.d_density(0.0) / r0 : 0.0;
  for (double u : grid) {
    if (!metric.contains(u)) throw DomainError("log_concavity_report: " + describe(u, metric.lo(), metric.hi()));
    const double k = curvature_at(metric, u);
    if (k < report.min_curvature) {
      report.min_curvature = k;
      report.worst_point = u;
    }
    if (has_origin) {
      const double slack = r0 * std::exp(rate * u) - metric.density(u);
      report.exp_majorant_min_slack = std::min(report.exp_majorant_min_slack, slack);
    }
  }
  report.is_nonnegative = report.min_curvature >= -curvature_tolerance;
  report.exp_majorant_ok = has_origin && report.exp_majorant_min_slack >= -1e-9;
  return report;
}

std::vector<double> interior_grid(double lo, double hi, int count) {
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (int i = 1; i <= count; ++i) grid.push_back(lo + (hi - lo) * i / (count + 1));
  return grid;
}

bool is_unimodal(const Metric1D& metric, int samples, double tol) {
  const double lo = std::isfinite(metric.lo()) ? metric.lo() : -1.0;
  const double hi = std::isfinite(metric.hi()) ? metric.hi() : 1.0;
  for (double u : interior_grid(lo, hi, samples)) {
    if (u == 0.0) continue;
    const double d = metric.d_density(u);
    if (u < 0 && d < -tol) return false;
    if (u > 0 && d > tol) return false;
  }
  return true;
}

}  // namespace schwarz
