#include "schwarz/bounds.hpp"

#include "schwarz/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace schwarz {

using std::numbers::pi;

SlackClass classify_slack(double slack, double tol) {
  if (slack < -tol) return SlackClass::violated;
  if (slack <= tol) return SlackClass::equality;
  return SlackClass::strict;
}

const char* to_string(SlackClass c) {
  switch (c) {
    case SlackClass::strict: return "strict";
    case SlackClass::equality: return "equality";
    case SlackClass::violated: return "violated";
  }
  return "?";
}

void BoundReport::add(DiskPoint z, DiskPoint w, double lhs, double rhs) { points.push_back({z, w, lhs, rhs, rhs - lhs}); }

void BoundReport::finish() {
  if (points.empty() && applicable) throw InvalidInput("bound report '" + name + "' has no points");
  min_slack = std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    // NaN slack counts as a failure.
    if (!(p.slack >= min_slack)) {
      min_slack = p.slack;
      worst_point = p.z;
    }
  }
  passed = !applicable || min_slack >= -tolerance;
  for (auto& link : links) {
    link.tolerance = tolerance;
    link.finish();
  }
}

bool BoundReport::chain_passed() const {
  return std::all_of(links.begin(), links.end(), [](const BoundReport& l) { return l.passed; });
}

bool BoundReport::equality_everywhere() const {
  return std::all_of(points.begin(), points.end(),
                     [this](const BoundPoint& p) { return classify_slack(p.slack, tolerance) == SlackClass::equality; });
}

std::vector<DiskPoint> ring_grid(double radius, int rings, int angles) {
  if (!(radius > 0 && radius < 1) || rings < 1 || angles < 1) throw InvalidInput("ring_grid needs 0 < radius < 1");
  std::vector<DiskPoint> grid{0.0};
  for (int i = 1; i < rings; ++i) {
    const double rho = radius * i / (rings - 1);
    for (int j = 0; j < angles; ++j) grid.push_back(std::polar(rho, 2 * pi * j / angles));
  }
  return grid;
}

std::vector<DiskPoint> radial_grid(double angle, double radius, int count) {
  std::vector<DiskPoint> grid;
  for (int i = 0; i < count; ++i) grid.push_back(std::polar(radius * i / std::max(1, count - 1), angle));
  return grid;
}

namespace {

void require_disk(DiskPoint z, const char* op) {
  if (!(std::abs(z) < 1)) throw OutsideDisk(std::string(op) + ": point outside the unit disk");
}

double hyperbolic_weight(DiskPoint z) { return 1 - std::norm(z); }

void require_unit_interval(const Metric1D& metric, const char* op) {
  if (metric.lo() != -1.0 || metric.hi() != 1.0) {
    throw DomainError(std::string(op) + " needs a metric on (-1, 1); '" + metric.name() + "' is not");
  }
}

void note_curvature(const Metric1D& metric, BoundReport& report) {
  const auto grid = interior_grid(-1, 1, 199);
  const auto lc = log_concavity_report(metric, grid);
  if (!lc.is_nonnegative) {
    report.warnings.push_back("curvature of '" + metric.name() + "' is negative (min " +
                              std::to_string(lc.min_curvature) + " at u = " + std::to_string(lc.worst_point) + ")");
  }
}

}  // namespace

double schwarz_quotient(const Metric1D&, const HarmonicField& field, DiskPoint z) {
  require_disk(z, "schwarz_quotient");
  const double f = field.evaluate(z);
  if (!(std::abs(f) < 1)) throw DomainError("schwarz_quotient needs f(z) in (-1, 1)");
  return field.gradient(z).norm() * hyperbolic_weight(z) / (1 - f * f);
}

double chen_rhs(double g_value, DiskPoint z) {
  require_disk(z, "chen_rhs");
  if (!(std::abs(g_value) <= 1)) throw DomainError("chen_rhs needs g in [-1, 1]");
  return 4 / pi * std::cos(pi * g_value / 2) / hyperbolic_weight(z);
}

BoundReport check_main_bound(const Metric1D& metric, const BoundaryData& boundary, std::span<const DiskPoint> grid,
                             double tol) {
  require_unit_interval(metric, "check_main_bound");
  BoundReport report{.name = "main", .tolerance = tol};
  note_curvature(metric, report);

  const RHarmonicSolution solution(metric, boundary);
  const double plo = metric.primitive_at_lo();
  const double phi = metric.primitive_at_hi();
  const bool finite = std::isfinite(plo) && std::isfinite(phi);
  if (!finite) report.warnings.push_back("mass of '" + metric.name() + "' is infinite; chain links skipped");
  const double r = finite ? (phi - plo) / 2 : 0.0;
  const double centre = finite ? (phi + plo) / 2 : 0.0;

  BoundReport chen{.name = "gradient <= chen"};
  BoundReport majorant{.name = "chen <= quadratic majorant"};
  BoundReport lemma{.name = "quadratic majorant <= main"};
  for (const DiskPoint z : grid) {
    require_disk(z, "check_main_bound");
    const double potential = solution.potential(z);
    const double f = metric.inverse_primitive(potential);
    const double density = metric.density(f);
    const double grad = solution.potential_gradient(z).norm() / density;
    const double w = hyperbolic_weight(z);
    const double main_rhs = 4 / pi * (1 - f * f) / w;
    report.add(z, grad, main_rhs);
    if (!finite) continue;
    const double g = (potential - centre) / r;
    const double scale = 4 / pi * r / (density * w);
    const double chen_f = scale * std::cos(pi * g / 2);
    const double mid = scale * (1 - g * g);
    chen.add(z, grad, chen_f);
    majorant.add(z, chen_f, mid);
    lemma.add(z, mid, main_rhs);
  }
  if (finite) report.links = {std::move(chen), std::move(majorant), std::move(lemma)};
  report.finish();
  return report;
}

std::pair<BoundReport, BoundReport> check_kalajpos(const Metric1D& metric, const BoundaryData& boundary,
                                                   std::span<const DiskPoint> grid, double tol) {
  require_unit_interval(metric, "check_kalajpos");
  BoundReport gradient{.name = "unimodal gradient", .tolerance = tol};
  BoundReport growth{.name = "unimodal growth", .tolerance = tol};

  const double r = mass(metric);  // NonIntegrable propagates
  if (!is_unimodal(metric)) {
    gradient.applicable = growth.applicable = false;
    gradient.warnings.push_back("'" + metric.name() + "' is not unimodal about 0");
    growth.warnings = gradient.warnings;
  }
  // int_{-1}^0 R = -P(-1) and int_0^1 R = P(1).
  const double balance = std::abs(metric.primitive_at_hi() + metric.primitive_at_lo());
  if (balance > 1e-9 * r) {
    growth.applicable = false;
    growth.warnings.push_back("mass is not split evenly about 0 (difference " + std::to_string(balance) + ")");
  }

  const RHarmonicSolution solution(metric, boundary);
  const double f0 = solution.value(0.0);
  if (std::abs(f0) > 1e-9) {
    growth.applicable = false;
    growth.warnings.push_back("f(0) = " + std::to_string(f0) + " is not 0");
  }

  for (const DiskPoint z : grid) {
    require_disk(z, "check_kalajpos");
    const double f = solution.value(z);
    const double grad = solution.potential_gradient(z).norm() / metric.density(f);
    gradient.add(z, grad, 2 * (1 - std::abs(f)) / hyperbolic_weight(z));
    growth.add(z, std::abs(f), 4 / pi * std::atan(std::abs(z)));
  }
  gradient.finish();
  growth.finish();
  return {std::move(gradient), std::move(growth)};
}

double hyperbolic_distance(DiskPoint z, DiskPoint w) {
  require_disk(z, "hyperbolic_distance");
  require_disk(w, "hyperbolic_distance");
  return std::atanh(std::abs(z - w) / std::abs(1.0 - z * std::conj(w)));
}

double interval_distance(double a, double b) {
  if (!(std::abs(a) < 1 && std::abs(b) < 1)) throw DomainError("interval_distance needs values in (-1, 1)");
  return std::atanh(std::abs(a - b) / std::abs(1 - a * b));
}

BoundReport check_distance_contraction(const Metric1D& metric, const BoundaryData& boundary,
                                       std::span<const std::pair<DiskPoint, DiskPoint>> pairs, double tol) {
  require_unit_interval(metric, "check_distance_contraction");
  BoundReport report{.name = "distance contraction", .tolerance = tol};
  note_curvature(metric, report);
  mass(metric);
  const RHarmonicSolution solution(metric, boundary);
  for (const auto& [z, w] : pairs) {
    const double fz = solution.value(z);
    const double fw = solution.value(w);
    report.add(z, w, interval_distance(fz, fw), 4 / pi * hyperbolic_distance(z, w));
  }
  report.finish();
  return report;
}

double cos_quadratic_majorant_check(std::span<const double> samples) {
  double worst = std::numeric_limits<double>::infinity();
  for (double b : samples) {
    if (!(b >= 0 && b <= 1)) throw DomainError("cos_quadratic_majorant_check needs samples in [0, 1]");
    worst = std::min(worst, (1 - b * b) - std::cos(pi * b / 2));
  }
  return worst;
}

DiskPoint Mobius::operator()(DiskPoint z) const {
  return std::polar(1.0, angle) * (z - a) / (1.0 - std::conj(a) * z);
}

}  // namespace schwarz
