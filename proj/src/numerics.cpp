#include "schwarz/numerics.hpp"

#include "schwarz/errors.hpp"

#include <algorithm>

namespace schwarz::numerics {

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw InvalidInput("monotone cubic needs at least two (x, y) pairs of equal length");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) throw InvalidInput("monotone cubic abscissae must be strictly increasing");
  }
  std::vector<double> secant(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) secant[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);

  slope_.assign(n, 0.0);
  slope_[0] = secant[0];
  slope_[n - 1] = secant[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    slope_[i] = secant[i - 1] * secant[i] <= 0 ? 0.0 : (secant[i - 1] + secant[i]) / 2;
  }
  // Fritsch-Carlson limiter.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (secant[i] == 0.0) {
      slope_[i] = 0.0;
      slope_[i + 1] = 0.0;
      continue;
    }
    const double alpha = slope_[i] / secant[i];
    const double beta = slope_[i + 1] / secant[i];
    const double norm = alpha * alpha + beta * beta;
    if (norm > 9.0) {
      const double tau = 3.0 / std::sqrt(norm);
      slope_[i] = tau * alpha * secant[i];
      slope_[i + 1] = tau * beta * secant[i];
    }
  }
}

std::size_t MonotoneCubic::segment(double t) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), t);
  std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(i, x_.size() - 2);
}

double MonotoneCubic::value(double t) const {
  const std::size_t i = segment(t);
  const double h = x_[i + 1] - x_[i];
  const double s = (t - x_[i]) / h;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  return h00 * y_[i] + h10 * h * slope_[i] + h01 * y_[i + 1] + h11 * h * slope_[i + 1];
}

double MonotoneCubic::derivative(double t) const {
  const std::size_t i = segment(t);
  const double h = x_[i + 1] - x_[i];
  const double s = (t - x_[i]) / h;
  const double d00 = 6 * s * s - 6 * s;
  const double d10 = 3 * s * s - 4 * s + 1;
  const double d01 = -6 * s * s + 6 * s;
  const double d11 = 3 * s * s - 2 * s;
  return (d00 * y_[i] + d01 * y_[i + 1]) / h + d10 * slope_[i] + d11 * slope_[i + 1];
}

double MonotoneCubic::second_derivative(double t) const {
  const std::size_t i = segment(t);
  const double h = x_[i + 1] - x_[i];
  const double s = (t - x_[i]) / h;
  const double e00 = 12 * s - 6;
  const double e10 = 6 * s - 4;
  const double e01 = -12 * s + 6;
  const double e11 = 6 * s - 2;
  return (e00 * y_[i] + e01 * y_[i + 1]) / (h * h) + (e10 * slope_[i] + e11 * slope_[i + 1]) / h;
}

}  // namespace schwarz::numerics
