// One line per acceptance criterion. `acceptance` runs all twelve,
// `acceptance --only N` runs one; the exit status is nonzero if any selected
// criterion fails.

#include "schwarz/bounds.hpp"
#include "schwarz/gallery.hpp"
#include "schwarz/harmonic.hpp"
#include "schwarz/lemma_lab.hpp"
#include "schwarz/metric.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace schwarz;
using std::numbers::pi;

namespace {

struct Verdict {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) passed = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string fmt(const char* format, double a, double b = 0, double c = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

double worst_over(const std::vector<double>& grid, const std::function<double(double)>& err) {
  double worst = 0;
  for (double u : grid) worst = std::max(worst, err(u));
  return worst;
}

// 1
Verdict curvature_formulas() {
  Verdict v;
  const auto grid = interior_grid(-1, 1, 99);
  struct Case {
    const char* label;
    Metric1D metric;
    std::function<double(double)> exact;
  };
  const std::vector<Case> cases{
      {"1/(1-u^2)", families::hyperbolic(), [](double u) { return -2 * (1 + u * u); }},
      {"sec(pi u/2)", families::secant(), [](double) { return -pi * pi / 4; }},
      {"exp(2u)", families::exponential(2.0), [](double) { return 0.0; }},
      {"exp(-1u)", families::exponential(-1.0), [](double) { return 0.0; }},
  };
  for (const auto& c : cases) {
    const Metric1D numeric = c.metric.numeric_only();
    const double analytic = worst_over(grid, [&](double u) { return std::abs(curvature_at(c.metric, u) - c.exact(u)); });
    const double fd = worst_over(grid, [&](double u) { return std::abs(curvature_at(numeric, u) - c.exact(u)); });
    v.require(analytic <= 1e-6 && fd <= 1e-4, std::string(c.label) +
                                                  fmt(" analytic %.1e numeric %.1e", analytic, fd));
  }
  return v;
}

// 2
Verdict negative_curvature() {
  Verdict v;
  double worst = 0;
  bool exceeds = true;
  for (int n = 1; n <= 10; ++n) {
    const ExampleReport r = run_negative_curvature_example(n);
    const double s0 = r.computed.at("S(0)");
    worst = std::max(worst, std::abs(s0 - n));
    if (n >= 2) exceeds = exceeds && s0 > 4 / pi;
  }
  v.require(worst <= 1e-9, fmt("max |S(0) - n| = %.1e over n = 1..10", worst));
  v.require(exceeds, "S(0) > 4/pi for n >= 2");
  return v;
}

// Five mollified sharpness metrics, s = 1/n, u = (n-1)^2/n^2 for n = 2..6.
std::vector<Metric1D> mollified_psi_set() {
  std::vector<Metric1D> out;
  for (int n = 2; n <= 6; ++n) out.push_back(families::lemma_psi_mollified((n - 1.0) * (n - 1.0), 1.0 / n, 0.05));
  return out;
}

// 3
// Tallied separately for the log-concave families and the mollified
// sharpness metrics, which are not log-concave near s.
struct Tally {
  int total = 0;
  int main_failures = 0;
  int chain_failures = 0;
  double main_min = INFINITY;
  std::string first_chain_failure;

  void add(const Metric1D& metric, std::uint64_t seed, const BoundReport& r) {
    ++total;
    main_min = std::min(main_min, r.min_slack);
    if (!r.passed) ++main_failures;
    if (r.chain_passed()) return;
    ++chain_failures;
    if (!first_chain_failure.empty()) return;
    for (const auto& link : r.links) {
      if (!link.passed) {
        first_chain_failure = metric.name() + " seed " + std::to_string(seed) + " link '" + link.name + "'" +
                              fmt(" slack %.2e", link.min_slack);
        return;
      }
    }
  }

  void report(Verdict& v, const std::string& label) const {
    v.require(main_failures == 0 && main_min >= -1e-9,
              label + ": main bound " + std::to_string(total - main_failures) + "/" + std::to_string(total) +
                  fmt(", min slack %.2e", main_min));
    v.require(chain_failures == 0, label + ": chain " + std::to_string(total - chain_failures) + "/" +
                                       std::to_string(total) +
                                       (first_chain_failure.empty() ? "" : ", first failure " + first_chain_failure));
  }
};

Verdict main_theorem_suite() {
  std::vector<Metric1D> concave{families::constant(), families::cosine()};
  for (double c : {-2.0, -1.0, 1.0, 2.0}) concave.push_back(families::exponential(c));
  const auto grid = ring_grid(0.95, 24, 96);
  Tally first, second;
  for (const auto& metric : concave) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      first.add(metric, seed, check_main_bound(metric, random_smooth_boundary(seed), grid));
    }
  }
  for (const auto& metric : mollified_psi_set()) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      second.add(metric, seed, check_main_bound(metric, random_smooth_boundary(seed), grid));
    }
  }
  Verdict v;
  first.report(v, "log-concave families");
  second.report(v, "mollified psi");
  return v;
}

// 4
Verdict sharpness_of_four_over_pi() {
  Verdict v;
  const RHarmonicSolution f(families::constant(), BoundaryData::step());
  const double s0 = f.gradient(0.0).norm();  // f(0) = 0
  v.require(std::abs(s0 - 4 / pi) <= 1e-3, fmt("S(0) = %.12f, 4/pi = %.12f", s0, 4 / pi));
  return v;
}

// 5
Verdict oracle_equivalence() {
  Verdict v;
  const double radius = 0.98;
  for (const Metric1D& metric : {families::cosine(), families::exponential(1.0)}) {
    double worst201 = 0;
    double worst_ratio = INFINITY;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const BoundaryData b = random_smooth_boundary(100 + seed, 0.8);
      const RHarmonicSolution exact(metric, b);
      const auto ref = [&](DiskPoint z) { return exact.value(z); };
      const double d201 = grid_sup_difference(fd_solve_oracle(metric, b, 201), ref, radius);
      const double d401 = grid_sup_difference(fd_solve_oracle(metric, b, 401), ref, radius);
      worst201 = std::max(worst201, d201);
      worst_ratio = std::min(worst_ratio, d201 / d401);
    }
    v.require(worst201 <= 5e-3 && worst_ratio >= 3,
              metric.name() + fmt(": max diff(201) %.2e, min shrink %.2f", worst201, worst_ratio));
  }
  return v;
}

// 6
Verdict propi1_oracle() {
  Verdict v;
  const auto grid = lemma_grid(2001);
  const Propi1Batch batch = propi1_batch(20240611, 10000, grid);
  v.require(batch.failures.empty() && batch.min_slack >= -1e-9,
            fmt("%g trials, min slack %.2e", batch.trials, batch.min_slack));
  const SlackScan id = propi1_scan(LogConcaveDiffeo::identity(), grid);
  v.require(std::abs(id.min_slack) <= 1e-12 && std::abs(id.max_slack) <= 1e-12,
            fmt("identity slack in [%.1e, %.1e]", id.min_slack, id.max_slack));
  return v;
}

// 7
Verdict proof_quantities() {
  Verdict v;
  const int count = 200;
  double max_r = 0, max_dif = -INFINITY, max_third = -INFINITY;
  for (const auto& rec : r_ratio_sweep(20, count, 0.999, count)) {
    const double k = rec.parameters.at("k");
    const double x = rec.parameters.at("x");
    max_r = std::max(max_r, rec.ratio);
    max_dif = std::max(max_dif, dif(k, x));
    max_third = std::max(max_third, dif_third(k, x));
  }
  double small_k = 0;
  for (int j = 0; j < count; ++j) small_k = std::max(small_k, std::abs(r_ratio(1e-4, 0.999 * j / (count - 1)) - 1));
  v.require(max_r <= 1 + 1e-9, fmt("max r = %.12f", max_r));
  v.require(small_k <= 1e-6, fmt("max |r(1e-4, x) - 1| = %.1e", small_k));
  v.require(max_dif <= 1e-9, fmt("max dif = %.2e", max_dif));
  v.require(max_third <= 0, fmt("max dif''' = %.2e", max_third));
  return v;
}

// 8
Verdict lema_sharpness() {
  Verdict v;
  const auto sweep = sharpness_sweep(1000);
  bool monotone = true;
  double top = 0;
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    if (i > 0 && !(sweep[i].ratio > sweep[i - 1].ratio)) monotone = false;
    top = std::max(top, sweep[i].ratio);
  }
  const double last = sweep.back().ratio;
  v.require(monotone, "increasing in n");
  v.require(last > 0.99, fmt("ratio(n = 1000) = %.17g", last));
  v.require(top <= 1 + 1e-12, fmt("max ratio %.17g", top));
  return v;
}

// 9
Verdict halfplane() {
  Verdict v;
  const ExampleReport r = run_halfplane_example();
  const double t = r.computed.at("t*");
  const double q = r.computed.at("max Q");
  v.require(std::abs(t + 1.4771) <= 1e-3, fmt("t* = %.10f", t));
  v.require(std::abs(q - 1.0482) <= 1e-3, fmt("max = %.10f", q));
  const double res = r.computed.at("max residual, R = 1 - exp(-x)");
  v.require(res <= 1e-4, fmt("residual with R = 1 - exp(-x): %.2e (with R = exp(-x): %.2e)", res,
                             r.computed.at("max residual, R = exp(-x)")));
  return v;
}

// 10
Verdict strip() {
  Verdict v;
  const ExampleReport r = run_strip_example(1.0);
  for (const auto& c : r.checks) {
    if (!c.passed || c.label.find("K_") != std::string::npos || c.label.find("(-1, 1)") != std::string::npos) {
      v.require(c.passed, c.label + fmt(" (%.6g vs %.6g)", c.value, c.threshold));
    }
  }
  v.require(r.flagged.empty(), "no gated claim flagged");
  v.detail += fmt("; reported: lambda_0 = %.6f, S(f(0)) = %.6f (ungated)", r.computed.at("lambda_0(iy)"),
                  r.computed.at("S(f(0))"));
  return v;
}

// 11
Verdict kalajpos_suite() {
  Verdict v;
  std::vector<Metric1D> metrics{families::constant(), families::cosine(), families::parabolic(1.5),
                                families::parabolic(3.0), families::lemma_psi_mollified(4, 1.0 / 3, 0.05)};
  const auto grid = ring_grid(0.95, 24, 96);
  double min_gradient = INFINITY, min_growth = INFINITY;
  bool all = true;
  for (const auto& metric : metrics) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const auto [gradient, growth] = check_kalajpos(metric, random_smooth_boundary(seed, 0.9, 5, true), grid);
      all = all && gradient.applicable && growth.applicable && gradient.passed && growth.passed;
      min_gradient = std::min(min_gradient, gradient.min_slack);
      min_growth = std::min(min_growth, growth.min_slack);
    }
  }
  v.require(all && min_gradient >= -1e-9 && min_growth >= -1e-9,
            fmt("5 metrics x 4 odd boundaries: gradient min slack %.2e, growth min slack %.2e", min_gradient,
                min_growth));
  const auto rays = radial_grid(pi / 2, 0.99, 100);
  const auto [g, growth] = check_kalajpos(families::constant(), BoundaryData::step(), rays);
  double gap = 0;
  for (const auto& p : growth.points) gap = std::max(gap, std::abs(p.slack));
  v.require(growth.passed && gap <= 1e-9, fmt("R = 1, step: max |f - (4/pi) atan r| = %.1e at 100 samples", gap));
  return v;
}

// 12
Verdict distance_contraction() {
  Verdict v;
  std::vector<Metric1D> metrics{families::constant(), families::cosine(), families::parabolic(1.5)};
  for (double c : {-2.0, -1.0, 1.0, 2.0}) metrics.push_back(families::exponential(c));
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0, 1);
  auto draw = [&] { return std::polar(0.95 * std::sqrt(u(rng)), 2 * pi * u(rng)); };
  double worst = INFINITY;
  bool all = true;
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    std::vector<std::pair<DiskPoint, DiskPoint>> pairs;
    for (int j = 0; j < 1000; ++j) {
      const DiskPoint z = draw();
      pairs.emplace_back(z, draw());
    }
    const BoundReport r = check_distance_contraction(metrics[i], random_smooth_boundary(500 + i), pairs);
    all = all && r.passed;
    worst = std::min(worst, r.min_slack);
  }
  v.require(all && worst >= -1e-9, fmt("7 families x 1000 pairs, min slack %.2e", worst));
  return v;
}

struct Criterion {
  const char* title;
  double budget_seconds;
  Verdict (*run)();
};

const Criterion kCriteria[] = {
    {"curvature formulas", 1, curvature_formulas},
    {"negative-curvature counterexample", 1, negative_curvature},
    {"main theorem property suite", 120, main_theorem_suite},
    {"sharpness of 4/pi", 5, sharpness_of_four_over_pi},
    {"oracle equivalence", 180, oracle_equivalence},
    {"log-concave diffeomorphism lemma", 60, propi1_oracle},
    {"proof quantities r and dif", 10, proof_quantities},
    {"unimodal lemma sharpness", 1, lema_sharpness},
    {"half-plane example", 5, halfplane},
    {"strip example", 10, strip},
    {"unimodal theorem suite", 60, kalajpos_suite},
    {"distance contraction", 30, distance_contraction},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
      return 2;
    }
  }
  if (only < 0 || only > 12) {
    std::fprintf(stderr, "criterion must be 1..12\n");
    return 2;
  }
  int failed = 0;
  for (int i = 1; i <= 12; ++i) {
    if (only && i != only) continue;
    const Criterion& c = kCriteria[i - 1];
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    v.require(seconds < c.budget_seconds, fmt("%.2f s of %g s", seconds, c.budget_seconds));
    if (!v.passed) ++failed;
    std::printf("%s %2d %s: %s\n", v.passed ? "PASS" : "FAIL", i, c.title, v.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
