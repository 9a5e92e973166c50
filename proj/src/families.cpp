#include "schwarz/errors.hpp"
#include "schwarz/metric.hpp"
#include "schwarz/mollifier.hpp"
#include "schwarz/numerics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace schwarz::families {

using std::numbers::pi;

namespace {

// cos(pi u / 2) through the distance to the nearer edge, which is exact for
// |u| >= 1/2 and keeps relative accuracy as u -> +-1.
double cos_half_pi(double u) {
  const double a = std::abs(u);
  return a < 0.5 ? std::cos(pi * u / 2) : std::sin(pi * (1 - a) / 2);
}

}  // namespace

Metric1D constant(double value) {
  if (!(value > 0)) throw InvalidInput("constant metric needs a positive value");
  return Metric1D({.name = "constant",
                   .density = [value](double) { return value; },
                   .d_density = [](double) { return 0.0; },
                   .d2_density = [](double) { return 0.0; },
                   .nonnegative_curvature = true});
}

Metric1D exponential(double c, double lo, double hi) {
  return Metric1D({.name = "exponential(" + std::to_string(c) + ")",
                   .lo = lo,
                   .hi = hi,
                   .density = [c](double u) { return std::exp(c * u); },
                   .d_density = [c](double u) { return c * std::exp(c * u); },
                   .d2_density = [c](double u) { return c * c * std::exp(c * u); },
                   .nonnegative_curvature = true});
}

Metric1D cosine() {
  return Metric1D({.name = "cosine",
                   .density = [](double u) { return cos_half_pi(u); },
                   .d_density = [](double u) { return -pi / 2 * std::sin(pi * u / 2); },
                   .d2_density = [](double u) { return -pi * pi / 4 * cos_half_pi(u); },
                   .nonnegative_curvature = true});
}

Metric1D hyperbolic() {
  return Metric1D({.name = "hyperbolic",
                   .density = [](double u) { return 1 / ((1 - u) * (1 + u)); },
                   .d_density = [](double u) { return 2 * u / ((1 - u) * (1 + u) * (1 - u) * (1 + u)); },
                   .d2_density =
                       [](double u) {
                         const double w = (1 - u) * (1 + u);
                         return (2 + 6 * u * u) / (w * w * w);
                       },
                   .nonnegative_curvature = false});
}

Metric1D secant() {
  return Metric1D({.name = "secant",
                   .density = [](double u) { return 1 / cos_half_pi(u); },
                   .d_density =
                       [](double u) {
                         const double c = cos_half_pi(u);
                         return pi / 2 * std::sin(pi * u / 2) / (c * c);
                       },
                   .d2_density =
                       [](double u) {
                         const double c = cos_half_pi(u);
                         const double s = std::sin(pi * u / 2);
                         return pi * pi / 4 * (c * c + 2 * s * s) / (c * c * c);
                       },
                   .nonnegative_curvature = false});
}

Metric1D parabolic(double c) {
  if (!(c > 1)) throw InvalidInput("parabolic metric c - u^2 needs c > 1");
  // (log R)'' = -(2(c - u^2) + 4u^2)/(c - u^2)^2 < 0.
  return Metric1D({.name = "parabolic(" + std::to_string(c) + ")",
                   .density = [c](double u) { return c - u * u; },
                   .d_density = [](double u) { return -2 * u; },
                   .d2_density = [](double) { return -2.0; },
                   .nonnegative_curvature = true});
}

Metric1D lemma_psi(double a, double s) {
  const PiecewiseQuadraticMap psi = psi_family(a, s);
  return Metric1D({.name = "lemma_psi(" + std::to_string(a) + ", " + std::to_string(s) + ")",
                   .density = [psi](double x) { return psi.derivative(x); },
                   .d_density =
                       [a, s](double x) {
                         const double ax = std::abs(x);
                         if (ax >= s) return 0.0;
                         return x > 0 ? -2 * a : (x < 0 ? 2 * a : 0.0);
                       },
                   .d2_density = [](double) { return 0.0; },
                   // psi' has a convex corner at |x| = s, so log psi' is not concave there.
                   .nonnegative_curvature = false});
}

Metric1D lemma_psi_mollified(double a, double s, double epsilon) { return mollify(psi_family(a, s), epsilon); }

Metric1D tabulated(std::vector<double> u, std::vector<double> r) {
  for (double v : r) {
    if (!(v > 0)) throw InvalidInput("tabulated metric values must be positive");
  }
  auto cubic = std::make_shared<const numerics::MonotoneCubic>(std::move(u), std::move(r));
  const double lo = cubic->front();
  const double hi = cubic->back();
  return Metric1D({.name = "tabulated",
                   .lo = lo,
                   .hi = hi,
                   .density = [cubic](double x) { return cubic->value(x); },
                   .d_density = [cubic](double x) { return cubic->derivative(x); },
                   .d2_density = [cubic](double x) { return cubic->second_derivative(x); },
                   .nonnegative_curvature = false});
}

Metric1D half_plane_one_minus_exp() {
  return Metric1D({.name = "half_plane_one_minus_exp",
                   .lo = 0.0,
                   .hi = std::numeric_limits<double>::infinity(),
                   .density = [](double x) { return -std::expm1(-x); },
                   .d_density = [](double x) { return std::exp(-x); },
                   .d2_density = [](double x) { return -std::exp(-x); },
                   .nonnegative_curvature = true});
}

}  // namespace schwarz::families
