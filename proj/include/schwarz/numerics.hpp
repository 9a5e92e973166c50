#pragma once

// Scalar numerical kernels shared by the metric, harmonic and lemma modules.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

namespace schwarz::numerics {

namespace detail {

template <typename F, typename Scalar>
Scalar simpson_step(F& f, Scalar a, Scalar fa, Scalar b, Scalar fb, Scalar m, Scalar fm, Scalar whole,
                    Scalar tol, int depth) {
  const Scalar lm = (a + m) / 2;
  const Scalar rm = (m + b) / 2;
  const Scalar flm = f(lm);
  const Scalar frm = f(rm);
  const Scalar left = (m - a) / 6 * (fa + 4 * flm + fm);
  const Scalar right = (b - m) / 6 * (fm + 4 * frm + fb);
  const Scalar delta = left + right - whole;
  // Roundoff floor: below a few ulps of the piece, halving only adds noise.
  const Scalar floor = 64 * std::numeric_limits<Scalar>::epsilon() * (std::abs(left) + std::abs(right));
  if (depth <= 0 || std::abs(delta) <= 15 * tol || std::abs(delta) <= floor || !(lm > a && rm < b)) {
    return left + right + delta / 15;
  }
  return simpson_step(f, a, fa, m, fm, lm, flm, left, tol / 2, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, tol / 2, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature with Richardson correction.
/// Evaluates f at both endpoints, so callers integrating up to an open
/// boundary must stop short of it.
template <typename F, typename Scalar = double>
Scalar adaptive_simpson(F&& f, Scalar a, Scalar b, Scalar abs_tol = Scalar(1e-12), int max_depth = 48) {
  if (a == b) return Scalar(0);
  const Scalar fa = f(a);
  const Scalar fb = f(b);
  const Scalar m = (a + b) / 2;
  const Scalar fm = f(m);
  const Scalar whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return detail::simpson_step(f, a, fa, b, fb, m, fm, whole, abs_tol, max_depth);
}

/// Integral of f over [a, edge) where `edge` is an open endpoint (either
/// side of a). The interval is cut into dyadic shells that approach the
/// edge; the integral is declared divergent (nullopt) when the shell
/// contributions stop decaying or the running total passes `ceiling`.
template <typename F>
std::optional<double> open_end_integral(F&& f, double a, double edge, double abs_tol = 1e-12,
                                        double ceiling = 1e12) {
  double total = 0.0;
  double gap = edge - a;
  double inner = a;
  double previous = std::numeric_limits<double>::quiet_NaN();
  int stagnant = 0;
  for (int level = 0; level < 1100; ++level) {
    const double outer = edge - gap / 2;
    if (outer == inner || outer == edge) break;
    const double shell = adaptive_simpson(f, inner, outer, abs_tol / 64);
    total += shell;
    if (!std::isfinite(total) || std::abs(total) > ceiling) return std::nullopt;
    if (std::isfinite(previous) && std::abs(previous) > 0) {
      const double ratio = std::abs(shell) / std::abs(previous);
      stagnant = ratio > 0.8 ? stagnant + 1 : 0;
      if (stagnant >= 12 && level > 16) return std::nullopt;
      if (ratio < 0.8 && std::abs(shell) * ratio / (1 - ratio) < abs_tol / 4) {
        return total + shell * ratio / (1 - ratio);
      }
    } else if (shell == 0.0 && level > 4) {
      return total;
    }
    previous = shell;
    inner = outer;
    gap /= 2;
  }
  // Ran out of representable shells: the remaining piece is below one ulp of
  // the edge and only matters for non-integrable densities.
  if (stagnant >= 6) return std::nullopt;
  return total;
}

template <typename Scalar>
struct GaussRule {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> nodes;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;
};

/// Gauss-Legendre nodes/weights on [-1, 1] from the Jacobi matrix (Golub-Welsch).
template <typename Scalar = double>
GaussRule<Scalar> gauss_legendre(int n) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix jacobi = Matrix::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const Scalar k = Scalar(i);
    const Scalar beta = k / std::sqrt(4 * k * k - 1);
    jacobi(i, i - 1) = beta;
    jacobi(i - 1, i) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(jacobi);
  GaussRule<Scalar> rule;
  rule.nodes = solver.eigenvalues();
  rule.weights = 2 * solver.eigenvectors().row(0).transpose().array().square();
  return rule;
}

template <typename F, typename Scalar>
Scalar integrate(const GaussRule<Scalar>& rule, F&& f, Scalar a, Scalar b) {
  const Scalar half = (b - a) / 2;
  const Scalar mid = (a + b) / 2;
  Scalar sum = 0;
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

/// Gauss rule on [a, b], halved until both halves agree with the whole.
template <typename F, typename Scalar>
Scalar adaptive_gauss(const GaussRule<Scalar>& rule, F&& f, Scalar a, Scalar b, Scalar abs_tol, int depth = 30) {
  const Scalar whole = integrate(rule, f, a, b);
  const Scalar m = (a + b) / 2;
  const Scalar left = integrate(rule, f, a, m);
  const Scalar right = integrate(rule, f, m, b);
  const Scalar delta = left + right - whole;
  // Node positions carry an error of eps |m|, which a density blowing up near
  // the piece turns into relative noise of order eps |m| / (b - a).
  const Scalar noise = std::max(Scalar(1), std::abs(m) / (b - a));
  const Scalar floor = 4 * std::numeric_limits<Scalar>::epsilon() * noise * (std::abs(left) + std::abs(right));
  if (depth <= 0 || std::abs(delta) <= abs_tol || std::abs(delta) <= floor || !(m > a && m < b)) return left + right;
  return adaptive_gauss(rule, f, a, m, abs_tol / 2, depth - 1) + adaptive_gauss(rule, f, m, b, abs_tol / 2, depth - 1);
}

struct Extremum {
  double argument;
  double value;
  int iterations;
};

/// Golden-section search for the maximum of a unimodal function on [a, b].
template <typename F>
Extremum golden_section_max(F&& f, double a, double b, double x_tol = 1e-10, int max_iterations = 500) {
  const double inv_phi = (std::sqrt(5.0) - 1) / 2;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  for (; it < max_iterations && std::abs(b - a) > x_tol; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = (a + b) / 2;
  return {x, f(x), it};
}

/// Safeguarded Newton/bisection for an increasing function on a bracket.
/// `value_lo`/`value_hi` are F(lo) - target and F(hi) - target (possibly
/// infinite); F itself is never evaluated at lo or hi.
struct RootResult {
  double root;
  double residual;
  int iterations;
  bool converged;
};

template <typename F, typename DF>
RootResult increasing_root(F&& residual, DF&& slope, double lo, double hi, double value_lo, double value_hi,
                           double residual_tol, int max_iterations = 300) {
  double u;
  if (std::isfinite(value_lo) && std::isfinite(value_hi) && value_hi > value_lo) {
    u = lo + (hi - lo) * (-value_lo) / (value_hi - value_lo);
    if (!(u > lo && u < hi)) u = (lo + hi) / 2;
  } else {
    u = (lo + hi) / 2;
  }
  double best = u;
  double best_residual = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= max_iterations; ++it) {
    const double r = residual(u);
    if (std::abs(r) < std::abs(best_residual)) {
      best = u;
      best_residual = r;
    }
    if (std::abs(r) <= residual_tol) return {u, r, it, true};
    if (r < 0) {
      lo = u;
    } else {
      hi = u;
    }
    const double width = hi - lo;
    if (width <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(u))) {
      return {best, best_residual, it, true};
    }
    const double d = slope(u);
    double next = d > 0 ? u - r / d : std::numeric_limits<double>::quiet_NaN();
    if (!(next > lo && next < hi)) next = lo + width / 2;
    if (next == u) next = lo + width / 2;
    u = next;
  }
  return {best, best_residual, max_iterations, false};
}

/// Monotone piecewise-cubic Hermite interpolant (Fritsch-Carlson slopes).
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double value(double t) const;
  double derivative(double t) const;
  double second_derivative(double t) const;
  double front() const { return x_.front(); }
  double back() const { return x_.back(); }

 private:
  std::size_t segment(double t) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> slope_;
};

}  // namespace schwarz::numerics
