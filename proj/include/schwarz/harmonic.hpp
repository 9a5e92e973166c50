#pragma once

// Harmonic extension from the unit circle, the R-harmonic lift through the
// primitive of R, and an independent finite-difference relaxation oracle.

#include "schwarz/metric.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace schwarz {

using DiskPoint = std::complex<double>;
using Gradient = Eigen::Vector2d;

/// Constant value on the counter-clockwise arc from `begin` to `end` (radians).
struct Arc {
  double begin;
  double end;
  double value;
};

/// Boundary values on the unit circle. Smooth data is sampled at
/// `sample_count` uniform angles and integrated with the trapezoid rule;
/// piecewise-constant data keeps its arcs and is integrated exactly.
class BoundaryData {
 public:
  static constexpr int kDefaultSamples = 1024;

  static BoundaryData from_function(std::function<double(double)> values, int sample_count = kDefaultSamples,
                                    double target_lo = -1.0, double target_hi = 1.0);
  /// Periodic linear interpolation through (theta_i, value_i).
  static BoundaryData from_samples(std::vector<double> theta, std::vector<double> values,
                                   int sample_count = kDefaultSamples, double target_lo = -1.0,
                                   double target_hi = 1.0);
  /// Arcs must tile the circle; values may touch the closed target interval.
  static BoundaryData piecewise_constant(std::vector<Arc> arcs, int sample_count = kDefaultSamples,
                                         double target_lo = -1.0, double target_hi = 1.0);

  static BoundaryData constant(double c, int sample_count = kDefaultSamples);
  /// amplitude * cos(theta).
  static BoundaryData cosine(double amplitude = 1.0, int sample_count = kDefaultSamples);
  /// +amplitude on the upper half circle, -amplitude on the lower one.
  static BoundaryData step(double amplitude = 1.0, int sample_count = kDefaultSamples);

  double value(double theta) const;
  int sample_count() const { return static_cast<int>(samples_.size()); }
  const Eigen::VectorXd& samples() const { return samples_; }
  const Eigen::VectorXcd& nodes() const { return nodes_; }
  double target_lo() const { return lo_; }
  double target_hi() const { return hi_; }
  bool piecewise() const { return !arcs_.empty(); }
  const std::vector<Arc>& arcs() const { return arcs_; }

  /// Composition map(values(theta)), preserving the arc structure.
  BoundaryData mapped(const std::function<double(double)>& map, double target_lo, double target_hi) const;
  /// Same data resampled with another node count (piecewise data keeps its arcs).
  BoundaryData resampled(int sample_count) const;

 private:
  BoundaryData() = default;
  void sample();

  std::function<double(double)> fn_;
  std::vector<Arc> arcs_;
  Eigen::VectorXd samples_;
  Eigen::VectorXcd nodes_;
  double lo_ = -1.0;
  double hi_ = 1.0;
};

/// amplitude * tanh(c0 + sum_k (a_k cos k t + b_k sin k t) / k), k = 1..modes,
/// coefficients uniform in [-1, 1] (c0 in [-1/2, 1/2]) from mt19937_64(seed).
/// `odd` keeps only odd k and drops c0, so values(t + pi) = -values(t).
BoundaryData random_smooth_boundary(std::uint64_t seed, double amplitude = 0.95, int modes = 5, bool odd = false,
                                    int sample_count = BoundaryData::kDefaultSamples);

/// Evaluable field on the disk. `metric` is empty for Euclidean-harmonic g.
struct HarmonicField {
  std::function<double(DiskPoint)> evaluate;
  std::function<Gradient(DiskPoint)> gradient;
  std::optional<Metric1D> metric;
};

/// Poisson extension g(z). OutsideDisk when |z| >= 1.
double harmonic_extend(const BoundaryData& boundary, DiskPoint z);
/// Gradient of the Poisson extension through the differentiated kernel.
Gradient gradient_of(const BoundaryData& boundary, DiskPoint z);

HarmonicField poisson_field(const BoundaryData& boundary);

/// R-harmonic solution f = P^{-1}(harmonic extension of P(f*)), P the
/// primitive of R from 0. Works for infinite-mass metrics as long as
/// the boundary values are interior.
class RHarmonicSolution {
 public:
  RHarmonicSolution(Metric1D metric, const BoundaryData& boundary);

  double value(DiskPoint z) const;
  Gradient gradient(DiskPoint z) const;
  /// The harmonic function P(f); Euclidean-harmonic by construction.
  double potential(DiskPoint z) const;
  Gradient potential_gradient(DiskPoint z) const;
  /// g = H(f)/r in (-1, 1); NonIntegrable when r is infinite.
  double normalized(DiskPoint z) const;

  const Metric1D& metric() const { return metric_; }
  const BoundaryData& transformed_boundary() const { return transformed_; }
  HarmonicField field() const;

 private:
  Metric1D metric_;
  BoundaryData transformed_;
};

/// f(z) for the R-harmonic function with boundary values `boundary`.
double solve_R_harmonic(const Metric1D& metric, const BoundaryData& boundary, DiskPoint z);

/// Delta f + (R'(f)/R(f)) |grad f|^2 by five-point differences with step h.
double pde_residual(const Metric1D& metric, const HarmonicField& field, DiskPoint z, double h);
/// Same five-point residual for a function on any planar domain; no disk check.
double plane_pde_residual(const Metric1D& metric, const std::function<double(DiskPoint)>& f, DiskPoint z, double h);

/// Max Cauchy-Riemann defect of Hopf(f) = R(f)^2 f_z^2 over `grid`.
double hopf_holomorphy_residual(const Metric1D& metric, const HarmonicField& field, std::span<const DiskPoint> grid,
                                double h);

// ---------------------------------------------------------------------------
// Finite-difference oracle

struct OracleConfig {
  double step_tolerance = 1e-12;  // sup norm of the last Newton step
  int max_iterations = 50;
};

/// n x n Cartesian grid over [-1, 1]^2; values are meaningful where
/// `inside` is set, other nodes carry the nearest-angle boundary value.
struct GridField {
  int n = 0;
  double spacing = 0.0;
  Eigen::MatrixXd values;                                     // (row = y index, col = x index)
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> inside;  // strictly inside the unit disk
  int iterations = 0;
  double last_step = 0.0;
  double residual = 0.0;  // sup of the discrete equation at the end

  DiskPoint point(int row, int col) const { return {-1 + col * spacing, -1 + row * spacing}; }
};

/// Finite-difference solve of Delta f + (R'/R)(f)|grad f|^2 = 0, written as
/// div(R(f) grad f) = 0 with R at arm midpoints and Shortley-Weller arms at
/// the circle. Newton iteration with a sparse LU solve per step; never goes
/// through the primitive of R.
GridField fd_solve_oracle(const Metric1D& metric, const BoundaryData& boundary, int n,
                          const OracleConfig& config = {});

/// CSV rows "x,y,f" for nodes inside the disk.
void write_grid_csv(const GridField& grid, std::ostream& out);

/// Sup of |grid - reference| over inside nodes with |z| <= radius.
double grid_sup_difference(const GridField& grid, const std::function<double(DiskPoint)>& reference,
                           double radius);

}  // namespace schwarz
