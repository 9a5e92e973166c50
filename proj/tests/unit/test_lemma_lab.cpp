#include "schwarz/errors.hpp"
#include "schwarz/lemma_lab.hpp"
#include "schwarz/mollifier.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace schwarz;
using std::numbers::pi;

TEST_CASE("identity diffeo is the equality case") {
  const auto grid = lemma_grid();
  CHECK(grid.size() == 2001);
  const SlackScan scan = propi1_scan(LogConcaveDiffeo::identity(), grid);
  CHECK(std::abs(scan.min_slack) <= 1e-15);
  CHECK(std::abs(scan.max_slack) <= 1e-15);
}

TEST_CASE("sin(pi x / 2) has slack pi/2 - 1 at the origin") {
  const std::vector<double> origin{0.0};
  auto f = [](double x) { return std::sin(pi * x / 2); };
  auto fp = [](double x) { return pi / 2 * std::cos(pi * x / 2); };
  CHECK(propi1_scan(f, fp, origin).min_slack == doctest::Approx(pi / 2 - 1).epsilon(1e-15));
  CHECK(propi1_scan(f, fp, lemma_grid()).min_slack >= 0);
}

TEST_CASE("generated log-concave diffeos") {
  const auto two = generate_logconcave(1, 2);
  CHECK(two.knots_x().size() == 2);
  CHECK(two.slopes().size() == 1);
  // single slope: f' proportional to exp(k x)
  const double k = two.slopes().front();
  CHECK(two.derivative(0.4) / two.derivative(-0.2) == doctest::Approx(std::exp(0.6 * k)).epsilon(1e-13));

  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto d = generate_logconcave(seed, 2 + static_cast<int>(seed % 11));
    CHECK(std::abs(d.value(1.0) - 1) <= 1e-10);
    CHECK(std::abs(d.value(-1.0) + 1) <= 1e-10);
    const auto slopes = d.slopes();
    for (std::size_t i = 1; i < slopes.size(); ++i) CHECK(slopes[i] <= slopes[i - 1]);
    double previous = -2;
    for (double x : lemma_grid(101, 1e-4)) {
      CHECK(d.value(x) > previous);
      previous = d.value(x);
    }
  }
  const auto a = generate_logconcave(77, 6);
  const auto b = generate_logconcave(77, 6);
  CHECK(a.knots_x() == b.knots_x());
  CHECK(a.knots_h() == b.knots_h());
  CHECK_THROWS_AS(LogConcaveDiffeo({-1.0, 0.0, 1.0}, {0.0, 0.0, 1.0}), InvalidInput);
}

TEST_CASE("randomized log-concave inequality, small batch") {
  const auto grid = lemma_grid();
  const Propi1Batch batch = propi1_batch(42, 500, grid);
  CHECK(batch.failures.empty());
  CHECK(batch.min_slack >= -1e-9);
  const Propi1Batch again = propi1_batch(42, 500, grid);
  CHECK(again.min_slack == batch.min_slack);
  CHECK(again.worst.seed == batch.worst.seed);
}

TEST_CASE("r(k, x)") {
  CHECK(r_ratio(2, 0) == doctest::Approx(0.76159415595576489).epsilon(1e-14));
  for (double x : {0.0, 0.5, 0.9}) CHECK(std::abs(r_ratio(1e-4, x) - 1) <= 1e-6);
  // direct formula where it is well conditioned
  for (double k : {0.5, 3.0, 7.0}) {
    for (double x : {0.1, 0.6}) {
      const double direct = 2 * (std::cosh(k) - std::cosh(k * x)) / std::sinh(k) / (k * (1 - x * x));
      CHECK(r_ratio(k, x) == doctest::Approx(direct).epsilon(1e-12));
      CHECK(std::abs(r_ratio(-k, x) - r_ratio(k, x)) <= 1e-12);
      CHECK(std::abs(r_ratio(k, -x) - r_ratio(k, x)) <= 1e-12);
    }
  }
  CHECK(r_ratio(700, 0.3) <= 1);
  CHECK(std::isfinite(r_ratio(2000, 0.999)));
  CHECK_THROWS_AS(r_ratio(0, 0.2), PreconditionViolated);
}

TEST_CASE("dif and its anchors") {
  CHECK(dif(1, 1) == doctest::Approx(0.0));
  const double exact = 2 * (std::cosh(3.0) - 1) / std::sinh(3.0) / 3 - 1;
  CHECK(dif(3, 0) == doctest::Approx(exact).epsilon(1e-14));
  CHECK(dif(3, 0) == doctest::Approx(-0.39656783090342237).epsilon(1e-14));
  std::vector<double> unit;
  for (int i = 0; i <= 200; ++i) unit.push_back(i / 200.0);
  for (double k : {0.3, 1.0, 5.0, 20.0}) {
    const DifDiagnostics d = dif_diagnostics(k, unit);
    CHECK(d.max_dif <= 1e-9);
    CHECK(d.max_dif_third <= 0);
    CHECK(std::abs(d.dif_at_one) <= 1e-12);
    CHECK(std::abs(d.dif_prime_at_zero) <= 1e-6);
    CHECK(std::abs(d.dif_prime_at_one) <= 1e-6 * std::max(1.0, k * k));
  }
  CHECK(dif_third(2, 0.5) == doctest::Approx(-8 * std::sinh(1.0) / std::sinh(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(dif_diagnostics(1, std::vector<double>{1.5}), DomainError);
}

TEST_CASE("unimodal lemma slack") {
  CHECK(lema_slack(families::constant(), 0.0) == doctest::Approx(pi / 2 - 1).epsilon(1e-13));
  CHECK(std::abs(lema_slack(families::cosine(), 1 - 1e-7)) <= 1e-6);
  CHECK_THROWS_AS(lema_slack(families::exponential(1.0), 0.2), PreconditionViolated);

  const Metric1D smoothed = families::lemma_psi_mollified(81, 0.1, 0.01);
  for (double v : lemma_grid(401, 1e-3)) CHECK(lema_slack(smoothed, v) >= -1e-9);
}

TEST_CASE("near-extremal sharpness instance") {
  const int n = 20;
  const double s = 1.0 / n;
  const double u = (n - 1.0) * (n - 1.0) / (n * n);
  // R drops with slope -2a just left of s, so the bandwidth must be tiny
  // before R(s) settles near 1 - u.
  const Metric1D m = families::lemma_psi_mollified(u / (s * s), s, 1e-6);
  const double slack = lema_slack(m, s);
  CHECK(slack >= -1e-9);
  CHECK(slack <= 1e-3);
}

TEST_CASE("sharpness ratio") {
  CHECK(sharpness_ratio(1, 0.5) == doctest::Approx(0.62877688049625474).epsilon(1e-14));
  const double s10 = 0.1, u10 = 0.81;
  CHECK(sharpness_ratio(u10 / (s10 * s10), s10) == doctest::Approx(0.89819856873646156).epsilon(1e-14));
  CHECK(sharpness_ratio(0.999 * 0.999 / 1e-6, 1e-3) == doctest::Approx(0.99899936063556310).epsilon(1e-13));
  CHECK(sharpness_ratio(1e-12, 0.5) == doctest::Approx(2 * std::sin(pi / 4) / (pi * 0.75)).epsilon(1e-10));
  for (auto [a, s] : {std::pair{81.0, 0.1}, {4.0, 1.0 / 3}, {0.5, 0.5}, {1.0, 0.9}}) {
    CHECK(sharpness_ratio_direct(a, s) == doctest::Approx(sharpness_ratio(a, s)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(sharpness_ratio(81, 0.2), ParameterOutOfRange);
  CHECK_THROWS_AS(sharpness_ratio(1, 1.0), ParameterOutOfRange);
}

TEST_CASE("sweeps") {
  const auto rows = sharpness_sweep(1000);
  CHECK(rows.size() == 999);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].ratio > rows[i - 1].ratio);
  CHECK(rows.back().ratio > 0.99);
  CHECK(rows.back().ratio <= 1 + 1e-12);
  CHECK(rows.front().parameters.at("s") == 0.5);
  const auto grid = r_ratio_sweep(20, 10, 0.999, 5);
  CHECK(grid.size() == 50);
  for (const auto& row : grid) CHECK(row.ratio <= 1 + 1e-9);
}
