#pragma once

#include "schwarz/metric.hpp"

#include <vector>

namespace schwarz {

/// One quadratic piece c0 + c1 x + c2 x^2 on [lo, hi].
struct QuadraticPiece {
  double lo;
  double hi;
  double c0;
  double c1;
  double c2;

  double value(double x) const { return c0 + x * (c1 + x * c2); }
  double slope(double x) const { return c1 + 2 * c2 * x; }
};

/// Continuous piecewise-quadratic map on [-1, 1], continued linearly
/// beyond the endpoints with the one-sided end slopes.
class PiecewiseQuadraticMap {
 public:
  PiecewiseQuadraticMap() = default;
  explicit PiecewiseQuadraticMap(std::vector<QuadraticPiece> pieces);

  /// Odd extension of pieces given on [0, 1].
  static PiecewiseQuadraticMap odd_extension(const std::vector<QuadraticPiece>& right_half);
  static PiecewiseQuadraticMap identity();

  double value(double x) const;
  double derivative(double x) const;

  /// Pieces on [-1, 1] plus the two linear continuations, ordered.
  const std::vector<QuadraticPiece>& line_pieces() const { return line_; }
  const std::vector<QuadraticPiece>& pieces() const { return pieces_; }

 private:
  std::vector<QuadraticPiece> pieces_;
  std::vector<QuadraticPiece> line_;
};

/// Standard exponential bump sigma(z) = C exp(-1/(1-z^2)) on (-1, 1), with C
/// fixed numerically so the integral is one. Cumulative moments
/// int_{-1}^z t^k sigma(t) dt (k = 0, 1, 2) are tabulated once.
class Bump {
 public:
  static const Bump& instance();

  double value(double z) const;
  double derivative(double z) const;
  /// int_a^b t^k sigma(t) dt for k in {0, 1, 2}; a, b are clipped to [-1, 1].
  double moment(int k, double a, double b) const;
  double normalization() const { return normalization_; }

 private:
  Bump();
  double cumulative(int k, double z) const;

  double normalization_ = 1.0;
  int cells_ = 0;
  std::vector<double> table_[3];
};

/// psi_eps = phi_eps / phi_eps(1) with phi_eps = psi * sigma_eps.
class MollifiedMap {
 public:
  MollifiedMap(PiecewiseQuadraticMap psi, double epsilon);

  double value(double x) const;        // psi_eps
  double derivative(double x) const;   // R_eps = psi_eps'
  double second(double x) const;       // R_eps'
  double third(double x) const;        // R_eps''
  double epsilon() const { return epsilon_; }

 private:
  double phi(double x) const;
  double phi1(double x) const;
  double phi2(double x) const;
  double phi3(double x) const;

  PiecewiseQuadraticMap psi_;
  double epsilon_;
  double scale_;  // 1 / phi_eps(1)
  std::vector<double> knots_;
  std::vector<double> slope_jump_;   // [psi'] at knots
  std::vector<double> curve_jump_;   // [psi''] at knots
};

/// Sharpness map psi(x) = (1 + 2as - as^2) x - a x^2 on [0, s),
/// 1 + (1 - as^2)(x - 1) on [s, 1], oddly extended.
PiecewiseQuadraticMap psi_family(double a, double s);

/// R_eps = psi_eps' as a metric on (-1, 1). InvalidInput unless psi is odd,
/// increasing, and fixes -1 and 1.
Metric1D mollify(const PiecewiseQuadraticMap& psi, double epsilon);

}  // namespace schwarz
