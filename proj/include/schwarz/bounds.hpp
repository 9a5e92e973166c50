#pragma once

// Pointwise gradient and distance bounds for R-harmonic maps into (-1, 1),
// evaluated on sample grids and collected into reports.

#include "schwarz/harmonic.hpp"
#include "schwarz/metric.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace schwarz {

inline constexpr double kDefaultSlackTolerance = 1e-9;

struct BoundPoint {
  DiskPoint z;
  DiskPoint w;  // second point of a pair; equals z for pointwise bounds
  double lhs;
  double rhs;
  double slack;  // rhs - lhs
};

/// Equality when |slack| <= tol, violated when slack < -tol.
enum class SlackClass { strict, equality, violated };
SlackClass classify_slack(double slack, double tol = kDefaultSlackTolerance);
const char* to_string(SlackClass c);

struct BoundReport {
  std::string name;
  std::vector<BoundPoint> points{};
  double min_slack = 0.0;
  DiskPoint worst_point{};
  double tolerance = kDefaultSlackTolerance;
  bool applicable = true;
  bool passed = false;
  std::vector<std::string> warnings{};
  /// Intermediate inequalities, in order, when the bound is proved by a chain.
  std::vector<BoundReport> links{};

  void add(DiskPoint z, double lhs, double rhs) { add(z, z, lhs, rhs); }
  void add(DiskPoint z, DiskPoint w, double lhs, double rhs);
  /// Computes min_slack, worst_point and passed; links are finished too but
  /// do not enter `passed`.
  void finish();
  bool chain_passed() const;
  bool equality_everywhere() const;
};

/// Origin plus `rings - 1` circles of radius up to `radius`, `angles` points each.
std::vector<DiskPoint> ring_grid(double radius = 0.95, int rings = 24, int angles = 96);
/// `count` points on the segment [0, radius] e^{i angle}.
std::vector<DiskPoint> radial_grid(double angle, double radius, int count);

/// |grad f(z)| (1 - |z|^2) / (1 - f(z)^2).
double schwarz_quotient(const Metric1D& metric, const HarmonicField& field, DiskPoint z);

/// (4/pi) cos(pi g / 2) / (1 - |z|^2): the sharp gradient bound for a
/// Euclidean harmonic g into (-1, 1).
double chen_rhs(double g_value, DiskPoint z);

/// |grad f| <= (4/pi)(1 - f^2)/(1 - |z|^2) for the solution with the given
/// boundary values. For finite mass the report carries three links,
///   |grad f| <= (4/pi) cos(pi g/2) r/(R(f)(1-|z|^2))
///            <= (4/pi) (1 - g^2) r/(R(f)(1-|z|^2))
///            <= (4/pi) (1 - f^2)/(1-|z|^2),
/// with g = H(f)/r. Negative curvature or infinite mass only adds warnings.
BoundReport check_main_bound(const Metric1D& metric, const BoundaryData& boundary, std::span<const DiskPoint> grid,
                             double tol = kDefaultSlackTolerance);

/// Gradient bound 2(1-|f|)/(1-|z|^2) and the growth bound |f| <= (4/pi) atan|z|.
/// A report whose hypotheses fail is marked not applicable instead of failed.
std::pair<BoundReport, BoundReport> check_kalajpos(const Metric1D& metric, const BoundaryData& boundary,
                                                   std::span<const DiskPoint> grid,
                                                   double tol = kDefaultSlackTolerance);

/// artanh(|z - w| / |1 - z conj(w)|).
double hyperbolic_distance(DiskPoint z, DiskPoint w);
/// Same formula on the interval (-1, 1).
double interval_distance(double a, double b);

/// d_h(f(z), f(w)) <= (4/pi) d_h(z, w) over the given pairs.
BoundReport check_distance_contraction(const Metric1D& metric, const BoundaryData& boundary,
                                       std::span<const std::pair<DiskPoint, DiskPoint>> pairs,
                                       double tol = kDefaultSlackTolerance);

/// min over samples of (1 - b^2) - cos(pi b / 2).
double cos_quadratic_majorant_check(std::span<const double> samples);

/// Disk automorphism z -> e^{i angle} (z - a)/(1 - conj(a) z).
struct Mobius {
  DiskPoint a;
  double angle = 0.0;
  DiskPoint operator()(DiskPoint z) const;
};

}  // namespace schwarz
