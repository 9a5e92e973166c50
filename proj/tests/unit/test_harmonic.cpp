#include "schwarz/bounds.hpp"
#include "schwarz/errors.hpp"
#include "schwarz/harmonic.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace schwarz;
using std::numbers::pi;

namespace {

std::vector<DiskPoint> random_points(std::uint64_t seed, int count, double radius) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<DiskPoint> out;
  for (int i = 0; i < count; ++i) out.push_back(std::polar(radius * std::sqrt(u(rng)), 2 * pi * u(rng)));
  return out;
}

}  // namespace

TEST_CASE("Poisson extension reproduces exact harmonic functions") {
  const auto cosine = BoundaryData::cosine(0.7);
  for (DiskPoint z : random_points(1, 50, 0.95)) CHECK(harmonic_extend(cosine, z) == doctest::Approx(0.7 * z.real()).epsilon(1e-12));
  // Step: (2/pi) atan(2y / (1 - |z|^2)), which is (4/pi) atan(y) on the imaginary axis.
  const auto step = BoundaryData::step();
  for (double y : {-0.9, -0.3, 0.0, 0.5, 0.99}) {
    CHECK(harmonic_extend(step, DiskPoint(0, y)) == doctest::Approx(4 / pi * std::atan(y)).epsilon(1e-13));
  }
  for (DiskPoint z : random_points(2, 50, 0.99)) {
    const double exact = 2 / pi * std::atan(2 * z.imag() / (1 - std::norm(z)));
    CHECK(std::abs(harmonic_extend(step, z) - exact) <= 1e-13);
  }
}

TEST_CASE("mean value and maximum principle") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto b = random_smooth_boundary(seed);
    CHECK(harmonic_extend(b, 0.0) == doctest::Approx(b.samples().mean()).epsilon(1e-10));
    const double lo = b.samples().minCoeff();
    const double hi = b.samples().maxCoeff();
    for (DiskPoint z : random_points(seed, 200, 0.99999)) {
      const double g = harmonic_extend(b, z);
      CHECK(g >= lo);
      CHECK(g <= hi);
    }
  }
}

TEST_CASE("even boundary data gives a conjugation-symmetric extension") {
  const auto b = BoundaryData::from_function([](double t) { return 0.5 * std::tanh(std::cos(t) + 0.3 * std::cos(3 * t)); });
  for (DiskPoint z : random_points(9, 40, 0.95)) {
    CHECK(std::abs(harmonic_extend(b, z) - harmonic_extend(b, std::conj(z))) <= 1e-13);
  }
}

TEST_CASE("kernel gradient agrees with central differences") {
  const auto b = random_smooth_boundary(11);
  const double h = 1e-5;
  for (DiskPoint z : random_points(12, 100, 0.9)) {
    const Gradient g = gradient_of(b, z);
    const double gx = (harmonic_extend(b, z + h) - harmonic_extend(b, z - h)) / (2 * h);
    const double gy = (harmonic_extend(b, z + DiskPoint(0, h)) - harmonic_extend(b, z - DiskPoint(0, h))) / (2 * h);
    CHECK(std::abs(g.x() - gx) <= 1e-6);
    CHECK(std::abs(g.y() - gy) <= 1e-6);
  }
}

TEST_CASE("extension rejects points off the open disk") {
  const auto b = BoundaryData::cosine();
  CHECK_THROWS_AS(harmonic_extend(b, 1.0), OutsideDisk);
  CHECK_THROWS_AS(gradient_of(b, DiskPoint(0.8, 0.8)), OutsideDisk);
  CHECK_THROWS_AS(solve_R_harmonic(families::cosine(), b, 2.0), OutsideDisk);
}

TEST_CASE("R-harmonic solution for exp(c u) against a dense independent quadrature") {
  // P(u) = (e^{cu} - 1)/c, so f = log(1 + c * Poisson[P(f*)]) / c.
  const double c = 1.5;
  auto fstar = [](double t) { return 0.6 * std::sin(t) + 0.2 * std::cos(2 * t); };
  const Metric1D metric = families::exponential(c);
  const RHarmonicSolution solution(metric, BoundaryData::from_function(fstar));
  for (DiskPoint z : random_points(4, 20, 0.9)) {
    const int n = 20000;
    double sum = 0;
    for (int j = 0; j < n; ++j) {
      const double t = 2 * pi * j / n;
      sum += std::expm1(c * fstar(t)) / c * (1 - std::norm(z)) / std::norm(std::polar(1.0, t) - z);
    }
    const double exact = std::log1p(c * sum / n) / c;
    CHECK(solution.value(z) == doctest::Approx(exact).epsilon(1e-11));
  }
}

TEST_CASE("closed-form field for the Poincare restriction") {
  // f = tanh(n x) is R-harmonic for R = 1/(1 - u^2).
  const Metric1D metric = families::hyperbolic();
  const double n = 3;
  const HarmonicField field{[n](DiskPoint z) { return std::tanh(n * z.real()); }, nullptr, metric};
  for (DiskPoint z : random_points(5, 20, 0.8)) CHECK(std::abs(pde_residual(metric, field, z, 1e-4)) <= 1e-4);
  const auto grid = ring_grid(0.8, 6, 12);
  CHECK(hopf_holomorphy_residual(metric, field, grid, 1e-4) <= 1e-6);
  const HarmonicField constant{[](DiskPoint) { return 0.3; }, nullptr, metric};
  CHECK(hopf_holomorphy_residual(metric, constant, grid, 1e-3) == 0.0);
  CHECK_THROWS_AS(pde_residual(metric, field, DiskPoint(0.99995, 0), 1e-3), StencilOutsideDisk);
}

TEST_CASE("solved instance satisfies the equation and has a holomorphic Hopf differential") {
  const Metric1D metric = families::cosine();
  const RHarmonicSolution solution(metric, random_smooth_boundary(21, 0.9));
  const HarmonicField field = solution.field();
  for (DiskPoint z : random_points(6, 20, 0.8)) CHECK(std::abs(pde_residual(metric, field, z, 1e-3)) <= 1e-4);
  CHECK(hopf_holomorphy_residual(metric, field, ring_grid(0.8, 8, 24), 1e-3) <= 1e-3);
}

TEST_CASE("finite-difference oracle tracks the closed-form solver") {
  const Metric1D metric = families::exponential(2.0);
  const auto b = random_smooth_boundary(31, 0.8);
  const RHarmonicSolution solution(metric, b);
  const GridField grid = fd_solve_oracle(metric, b, 101);
  CHECK(grid.last_step <= 1e-12);
  CHECK(grid_sup_difference(grid, [&](DiskPoint z) { return solution.value(z); }, 0.98) <= 5e-4);
}

TEST_CASE("random smooth boundaries are seeded and range-bound") {
  const auto a = random_smooth_boundary(5);
  const auto b = random_smooth_boundary(5);
  CHECK((a.samples().array() == b.samples().array()).all());
  CHECK(a.samples().cwiseAbs().maxCoeff() < 0.95);
  const auto odd = random_smooth_boundary(6, 0.9, 5, true);
  for (double t : {0.1, 1.0, 2.5}) CHECK(odd.value(t + pi) == doctest::Approx(-odd.value(t)).epsilon(1e-13));
  CHECK(std::abs(harmonic_extend(odd, 0.0)) <= 1e-15);
}
