#include "schwarz/errors.hpp"
#include "schwarz/harmonic.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace schwarz {

namespace {

// One interior unknown with its four arms. An arm either points at another
// unknown (index >= 0) or ends on the circle at distance `reach` with a
// fixed boundary value.
struct Arm {
  int index = -1;
  double reach = 0.0;
  double boundary = 0.0;
};

struct Node {
  int row;
  int col;
  Arm east, west, north, south;
};

}  // namespace

GridField fd_solve_oracle(const Metric1D& metric, const BoundaryData& boundary, int n, const OracleConfig& config) {
  if (n < 33) throw InvalidInput("fd_solve_oracle needs n >= 33");
  GridField grid;
  grid.n = n;
  grid.spacing = 2.0 / (n - 1);
  const double h = grid.spacing;
  grid.values = Eigen::MatrixXd::Zero(n, n);
  grid.inside.resize(n, n);

  Eigen::MatrixXi index = Eigen::MatrixXi::Constant(n, n, -1);
  std::vector<Node> nodes;
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      const DiskPoint z = grid.point(row, col);
      const bool in = std::norm(z) < 1.0 - 1e-14;
      grid.inside(row, col) = in;
      if (in) {
        index(row, col) = static_cast<int>(nodes.size());
        nodes.push_back({row, col, {}, {}, {}, {}});
      } else {
        grid.values(row, col) = boundary.value(std::atan2(z.imag(), z.real()));
      }
    }
  }

  // Arms that leave the disk stop on the circle (Shortley-Weller).
  auto make_arm = [&](int row, int col, int drow, int dcol) {
    Arm arm;
    const int r2 = row + drow;
    const int c2 = col + dcol;
    if (r2 >= 0 && r2 < n && c2 >= 0 && c2 < n && index(r2, c2) >= 0) {
      arm.index = index(r2, c2);
      arm.reach = h;
      return arm;
    }
    const DiskPoint z = grid.point(row, col);
    double x = z.real();
    double y = z.imag();
    if (dcol != 0) {
      const double xb = dcol * std::sqrt(std::max(0.0, 1 - y * y));
      arm.reach = std::abs(xb - x);
      x = xb;
    } else {
      const double yb = drow * std::sqrt(std::max(0.0, 1 - x * x));
      arm.reach = std::abs(yb - y);
      y = yb;
    }
    arm.reach = std::clamp(arm.reach, 1e-12, h);
    arm.boundary = boundary.value(std::atan2(y, x));
    return arm;
  };
  for (auto& node : nodes) {
    node.east = make_arm(node.row, node.col, 0, 1);
    node.west = make_arm(node.row, node.col, 0, -1);
    node.north = make_arm(node.row, node.col, 1, 0);
    node.south = make_arm(node.row, node.col, -1, 0);
  }

  const double lo = metric.lo();
  const double hi = metric.hi();
  const auto count = static_cast<Eigen::Index>(nodes.size());
  Eigen::VectorXd f = Eigen::VectorXd::Constant(count, boundary.samples().mean());

  // Conservative form R f'' + R' f'^2 = (R f')' with R taken at arm midpoints:
  //   F_i(f) = sum_k c_ik R((f_i + f_k)/2) (f_k - f_i) = 0.
  auto arm_value = [&f](const Arm& a) { return a.index >= 0 ? f[a.index] : a.boundary; };
  auto assemble = [&](Eigen::VectorXd& residual, std::vector<Eigen::Triplet<double>>* jacobian) {
    residual.setZero(count);
    if (jacobian) jacobian->clear();
    for (Eigen::Index i = 0; i < count; ++i) {
      const Node& node = nodes[static_cast<std::size_t>(i)];
      const Arm* arms[4] = {&node.east, &node.west, &node.north, &node.south};
      const double span[4] = {node.east.reach + node.west.reach, node.east.reach + node.west.reach,
                              node.north.reach + node.south.reach, node.north.reach + node.south.reach};
      double diagonal = 0;
      for (int j = 0; j < 4; ++j) {
        const Arm& arm = *arms[j];
        const double c = 2 / (arm.reach * span[j]);
        const double fk = arm_value(arm);
        const double mid = (f[i] + fk) / 2;
        const double w = metric.density(mid);
        residual[i] += c * w * (fk - f[i]);
        if (!jacobian) continue;
        const double bend = c * metric.d_density(mid) / 2 * (fk - f[i]);
        diagonal += bend - c * w;
        if (arm.index >= 0) jacobian->emplace_back(i, arm.index, bend + c * w);
      }
      if (jacobian) jacobian->emplace_back(i, i, diagonal);
    }
  };

  Eigen::SparseMatrix<double> J(count, count);
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  std::vector<Eigen::Triplet<double>> triplets;
  Eigen::VectorXd residual;
  int iteration = 0;
  double last_step = std::numeric_limits<double>::infinity();
  for (; iteration < config.max_iterations; ++iteration) {
    assemble(residual, &triplets);
    J.setFromTriplets(triplets.begin(), triplets.end());
    if (iteration == 0) lu.analyzePattern(J);
    lu.factorize(J);
    if (lu.info() != Eigen::Success) throw NoConvergence("fd_solve_oracle: singular Jacobian");
    const Eigen::VectorXd step = lu.solve(-residual);
    // Damp the step until every value stays inside the metric's interval.
    double t = 1;
    for (int halvings = 0; halvings < 60; ++halvings, t /= 2) {
      const Eigen::VectorXd trial = f + t * step;
      if ((trial.array() > lo).all() && (trial.array() < hi).all()) break;
    }
    f += t * step;
    last_step = t * step.lpNorm<Eigen::Infinity>();
    if (last_step < config.step_tolerance) {
      ++iteration;
      break;
    }
  }
  if (!(last_step < config.step_tolerance)) {
    throw NoConvergence("fd_solve_oracle stopped after " + std::to_string(iteration) +
                        " Newton steps with step " + std::to_string(last_step));
  }
  assemble(residual, nullptr);

  for (std::size_t k = 0; k < nodes.size(); ++k) grid.values(nodes[k].row, nodes[k].col) = f[static_cast<Eigen::Index>(k)];
  grid.iterations = iteration;
  grid.last_step = last_step;
  grid.residual = residual.lpNorm<Eigen::Infinity>();
  return grid;
}

void write_grid_csv(const GridField& grid, std::ostream& out) {
  out << "x,y,f\n" << std::setprecision(17);
  for (int row = 0; row < grid.n; ++row) {
    for (int col = 0; col < grid.n; ++col) {
      if (!grid.inside(row, col)) continue;
      const DiskPoint z = grid.point(row, col);
      out << z.real() << ',' << z.imag() << ',' << grid.values(row, col) << '\n';
    }
  }
}

double grid_sup_difference(const GridField& grid, const std::function<double(DiskPoint)>& reference, double radius) {
  double worst = 0;
  for (int row = 0; row < grid.n; ++row) {
    for (int col = 0; col < grid.n; ++col) {
      if (!grid.inside(row, col)) continue;
      const DiskPoint z = grid.point(row, col);
      if (std::abs(z) > radius) continue;
      worst = std::max(worst, std::abs(grid.values(row, col) - reference(z)));
    }
  }
  return worst;
}

}  // namespace schwarz
