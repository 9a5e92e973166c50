#pragma once

// Strip metrics rho(u, v) = R(u) on an interval, their curvature, mass and
// the centred primitive H that turns R-harmonic problems into Laplace ones.

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace schwarz {

using ScalarFn = std::function<double(double)>;

namespace detail {
struct MetricState;
}

/// Positive density R on an open interval (lo, hi). Immutable; copies share
/// state, including a lazily built primitive table guarded by call_once.
class Metric1D {
 public:
  struct Spec {
    std::string name;
    double lo = -1.0;
    double hi = 1.0;
    ScalarFn density;
    ScalarFn d_density;   // optional analytic R'
    ScalarFn d2_density;  // optional analytic R''
    bool nonnegative_curvature = false;  // declared by the family
  };

  explicit Metric1D(Spec spec);

  const std::string& name() const;
  double lo() const;
  double hi() const;
  bool contains(double u) const;
  bool declares_nonnegative_curvature() const;
  bool has_analytic_first_derivative() const;
  bool has_analytic_second_derivative() const;

  /// R(u); throws DomainError outside the open interval.
  double density(double u) const;
  /// R'(u), analytic when available, else central differences.
  double d_density(double u) const;
  /// (log R)''(u), analytic when R'' is known.
  double d2_log_density(double u) const;

  /// The same density with the analytic derivatives dropped, so every
  /// derivative goes through finite differences.
  Metric1D numeric_only() const;

  /// Integral of R from 0 to u (u strictly inside the domain). Finite for any
  /// interior u even when the total mass diverges. Requires a bounded
  /// domain containing 0.
  double primitive(double u) const;
  /// Inverse of `primitive`; OutOfRange when t is outside its image.
  double inverse_primitive(double t) const;
  /// Limits of the primitive at lo and hi (infinite when divergent).
  double primitive_at_lo() const;
  double primitive_at_hi() const;

 private:
  std::shared_ptr<detail::MetricState> state_;
};

/// Step used by the first-derivative difference quotient at u.
double first_difference_step(double u, double lo, double hi);
/// Step used by second-derivative difference quotients at u.
double second_difference_step(double u, double lo, double hi);

// ---------------------------------------------------------------------------
// Families

namespace families {

Metric1D constant(double value = 1.0);
/// R(u) = exp(c u): zero curvature.
Metric1D exponential(double c, double lo = -1.0, double hi = 1.0);
/// R(u) = cos(pi u / 2): curvature (pi^2/4) sec^4(pi u/2).
Metric1D cosine();
/// R(u) = 1 / (1 - u^2): the restriction of the Poincare density, K = -2(1+u^2).
Metric1D hyperbolic();
/// R(u) = sec(pi u / 2): K = -pi^2/4.
Metric1D secant();
/// R(u) = c - u^2 with c > 1: even and unimodal.
Metric1D parabolic(double c);
/// R = psi', psi the concave two-piece sharpness map, oddly extended.
Metric1D lemma_psi(double a, double s);
/// Mollified sharpness metric; see mollify().
Metric1D lemma_psi_mollified(double a, double s, double epsilon);
/// Monotone cubic interpolation through (u_i, R_i); domain (u_front, u_back).
Metric1D tabulated(std::vector<double> u, std::vector<double> r);
/// R(x) = 1 - exp(-x) on (0, inf).
Metric1D half_plane_one_minus_exp();

}  // namespace families

// ---------------------------------------------------------------------------
// Operations

/// Gaussian curvature of rho(u, v) = R(u): -(1/R^2) (R'/R)'.
double curvature_at(const Metric1D& metric, double u);

/// r = (1/2) integral of R over (-1, 1). NonIntegrable when it diverges.
double mass(const Metric1D& metric);

/// Centred primitive H(u) = -(1/2)(int_0^1 R + int_0^-1 R) + int_0^u R.
/// H(1) = r, H(-1) = -r.
double transform_H(const Metric1D& metric, double u);

/// The unique u with H(u) = t, for |t| < r.
double inverse_H(const Metric1D& metric, double t);

struct LogConcavityReport {
  double min_curvature = 0.0;
  double worst_point = 0.0;
  bool is_nonnegative = false;
  double exp_majorant_min_slack = 0.0;
  bool exp_majorant_ok = false;
};

/// Curvature scan over `grid` plus the tangent-line majorant
/// R(t) <= R(0) exp((R'(0)/R(0)) t) that makes log-concave densities integrable.
LogConcavityReport log_concavity_report(const Metric1D& metric, std::span<const double> grid,
                                        double curvature_tolerance = 1e-9);

/// Interior grid with `count` points uniformly spaced strictly inside (lo, hi).
std::vector<double> interior_grid(double lo, double hi, int count);

/// True when R' >= -tol on (lo, 0) and R' <= tol on (0, hi) at `samples` points.
bool is_unimodal(const Metric1D& metric, int samples = 199, double tol = 1e-9);

}  // namespace schwarz
