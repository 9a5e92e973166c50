#include "schwarz/cli.hpp"

#include "schwarz/bounds.hpp"
#include "schwarz/errors.hpp"
#include "schwarz/gallery.hpp"
#include "schwarz/harmonic.hpp"
#include "schwarz/io.hpp"
#include "schwarz/lemma_lab.hpp"
#include "schwarz/metric.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>

namespace schwarz::cli {

namespace fs = std::filesystem;
using io::json;

const char* to_string(Subcommand s) {
  switch (s) {
    case Subcommand::curvature: return "curvature";
    case Subcommand::transform: return "transform";
    case Subcommand::solve: return "solve";
    case Subcommand::check_bounds: return "check-bounds";
    case Subcommand::lemma: return "lemma";
    case Subcommand::sweep: return "sweep";
    case Subcommand::gallery: return "gallery";
  }
  return "?";
}

std::map<std::string, double> default_tolerances(Subcommand s) {
  switch (s) {
    case Subcommand::curvature: return {{"curvature", 1e-9}};
    case Subcommand::transform: return {{"roundtrip", 1e-9}};
    case Subcommand::solve: return {{"oracle", 5e-3}};
    case Subcommand::check_bounds: return {{"slack", kDefaultSlackTolerance}};
    case Subcommand::lemma: return {{"slack", 1e-9}};
    case Subcommand::sweep: return {{"ratio", 1e-12}, {"r_ratio", 1e-9}};
    case Subcommand::gallery: return {{"claim", 1e-3}};
  }
  return {};
}

namespace {

// Usage problems detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Outcome {
  bool passed = true;
  json result = json::object();
};

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << text;
}

template <typename Fn>
void write_csv(const fs::path& path, Fn&& fill) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  fill(out);
}

std::string f17(double x) { return io::format_double(x); }

Metric1D load_metric(const RunConfig& cfg, json& inputs) {
  if (cfg.metric_spec_path.empty()) throw UsageError(std::string(to_string(cfg.subcommand)) + " needs --metric");
  const json doc = io::read_json_file(cfg.metric_spec_path);
  inputs["metric"] = doc;
  return io::metric_from_json(doc);
}

BoundaryData load_boundary(const RunConfig& cfg, json& inputs) {
  if (!cfg.boundary_spec_path) throw UsageError(std::string(to_string(cfg.subcommand)) + " needs --boundary");
  const json doc = io::read_json_file(*cfg.boundary_spec_path);
  inputs["boundary"] = doc;
  return io::boundary_from_json(doc);
}

// Interior grid, with infinite domains cut off 20 units past the finite end.
std::vector<double> domain_grid(const Metric1D& metric, int count, json& result) {
  double lo = metric.lo();
  double hi = metric.hi();
  if (!std::isfinite(hi)) {
    hi = lo + 20;
    result["grid_upper_cutoff"] = hi;
  }
  if (!std::isfinite(lo)) {
    lo = hi - 20;
    result["grid_lower_cutoff"] = lo;
  }
  return interior_grid(lo, hi, count);
}

Outcome run_curvature(const RunConfig& cfg, const std::map<std::string, double>& tol, json& inputs) {
  const Metric1D metric = load_metric(cfg, inputs);
  const int count = cfg.grid_n > 0 ? cfg.grid_n : 999;
  inputs["grid_n"] = count;
  Outcome out;
  const auto grid = domain_grid(metric, count, out.result);
  const Metric1D numeric = metric.numeric_only();

  double kmin = std::numeric_limits<double>::infinity();
  double kmax = -kmin;
  double path_gap = 0;
  write_csv(cfg.output_dir / "curvature.csv", [&](std::ostream& os) {
    os << "u,R,K,K_numeric\n";
    for (double u : grid) {
      const double k = curvature_at(metric, u);
      const double kn = curvature_at(numeric, u);
      kmin = std::min(kmin, k);
      kmax = std::max(kmax, k);
      path_gap = std::max(path_gap, std::abs(k - kn));
      os << f17(u) << ',' << f17(metric.density(u)) << ',' << f17(k) << ',' << f17(kn) << '\n';
    }
  });
  const auto lc = log_concavity_report(metric, grid, tol.at("curvature"));
  out.result["metric"] = metric.name();
  out.result["min_curvature"] = kmin;
  out.result["max_curvature"] = kmax;
  out.result["max_analytic_vs_numeric"] = path_gap;
  out.result["log_concavity"] = io::to_json(lc);
  out.result["declares_nonnegative_curvature"] = metric.declares_nonnegative_curvature();
  if (metric.lo() == -1.0 && metric.hi() == 1.0) {
    try {
      out.result["mass"] = mass(metric);
    } catch (const NonIntegrable&) {
      out.result["mass"] = "infinite";
    }
  }
  // A family that promises K >= 0 must deliver it on the grid.
  const bool consistent = !metric.declares_nonnegative_curvature() || kmin >= -tol.at("curvature");
  out.result["declaration_consistent"] = consistent;
  out.passed = consistent;
  return out;
}

Outcome run_transform(const RunConfig& cfg, const std::map<std::string, double>& tol, json& inputs) {
  const Metric1D metric = load_metric(cfg, inputs);
  const int count = cfg.grid_n > 0 ? cfg.grid_n : 999;
  inputs["grid_n"] = count;
  const double r = mass(metric);
  Outcome out;
  const auto grid = interior_grid(-1, 1, count);
  double previous = -std::numeric_limits<double>::infinity();
  bool increasing = true;
  double roundtrip = 0;
  write_csv(cfg.output_dir / "transform.csv", [&](std::ostream& os) {
    os << "u,H,inverse_H\n";
    for (double u : grid) {
      const double h = transform_H(metric, u);
      const double back = inverse_H(metric, h);
      increasing = increasing && h > previous;
      previous = h;
      roundtrip = std::max(roundtrip, std::abs(back - u));
      os << f17(u) << ',' << f17(h) << ',' << f17(back) << '\n';
    }
  });
  out.result["metric"] = metric.name();
  out.result["mass"] = r;
  out.result["H_at_lo"] = metric.primitive_at_lo() - (metric.primitive_at_hi() + metric.primitive_at_lo()) / 2;
  out.result["H_at_hi"] = metric.primitive_at_hi() - (metric.primitive_at_hi() + metric.primitive_at_lo()) / 2;
  out.result["strictly_increasing"] = increasing;
  out.result["max_roundtrip_error"] = roundtrip;
  out.passed = increasing && roundtrip <= tol.at("roundtrip");
  return out;
}

Outcome run_solve(const RunConfig& cfg, const std::map<std::string, double>& tol, json& inputs) {
  const Metric1D metric = load_metric(cfg, inputs);
  const BoundaryData boundary = load_boundary(cfg, inputs);
  const int n = cfg.grid_n > 0 ? cfg.grid_n : 201;
  if (n < 5) throw UsageError("--grid-n must be at least 5");
  inputs["grid_n"] = n;
  inputs["oracle"] = cfg.oracle;
  Outcome out;
  const RHarmonicSolution solution(metric, boundary);
  const double h = 2.0 / (n - 1);
  write_csv(cfg.output_dir / "solution.csv", [&](std::ostream& os) {
    os << "x,y,f\n";
    for (int row = 0; row < n; ++row) {
      for (int col = 0; col < n; ++col) {
        const DiskPoint z(-1 + col * h, -1 + row * h);
        if (!(std::abs(z) < 1)) continue;
        os << f17(z.real()) << ',' << f17(z.imag()) << ',' << f17(solution.value(z)) << '\n';
      }
    }
  });
  out.result["metric"] = metric.name();
  out.result["f(0)"] = solution.value(0.0);
  out.result["grad_f(0)"] = solution.gradient(0.0).norm();
  if (cfg.oracle) {
    const GridField grid = fd_solve_oracle(metric, boundary, n);
    write_csv(cfg.output_dir / "oracle.csv", [&](std::ostream& os) { write_grid_csv(grid, os); });
    const double radius = 0.98;
    const double diff = grid_sup_difference(grid, [&](DiskPoint z) { return solution.value(z); }, radius);
    out.result["oracle"] = {{"newton_iterations", grid.iterations},
                            {"last_step", grid.last_step},
                            {"residual", grid.residual},
                            {"comparison_radius", radius},
                            {"sup_difference", diff}};
    out.passed = diff <= tol.at("oracle");
  }
  return out;
}

Outcome run_check_bounds(const RunConfig& cfg, const std::map<std::string, double>& tol, json& inputs) {
  const Metric1D metric = load_metric(cfg, inputs);
  const BoundaryData boundary = load_boundary(cfg, inputs);
  if (!(cfg.radius > 0 && cfg.radius < 1)) throw UsageError("--radius must lie in (0, 1)");
  inputs["radius"] = cfg.radius;
  inputs["rings"] = cfg.rings;
  inputs["angles"] = cfg.angles;
  inputs["pairs"] = cfg.pairs;
  const double slack_tol = tol.at("slack");
  const auto grid = ring_grid(cfg.radius, cfg.rings, cfg.angles);

  Outcome out;
  const BoundReport main = check_main_bound(metric, boundary, grid, slack_tol);
  write_csv(cfg.output_dir / "points.csv", [&](std::ostream& os) { io::write_points_csv(main, os); });
  out.result["main"] = io::to_json(main);
  out.passed = main.passed && main.chain_passed();

  bool finite = true;
  try {
    mass(metric);
  } catch (const NonIntegrable&) {
    finite = false;
  }
  if (finite && is_unimodal(metric)) {
    const auto [gradient, growth] = check_kalajpos(metric, boundary, grid, slack_tol);
    out.result["unimodal_gradient"] = io::to_json(gradient);
    out.result["unimodal_growth"] = io::to_json(growth);
    out.passed = out.passed && gradient.passed && growth.passed;
  }
  if (cfg.pairs > 0) {
    std::mt19937_64 rng(cfg.seed);
    auto draw = [&] { return std::polar(cfg.radius * std::sqrt(uniform01(rng)), 2 * std::numbers::pi * uniform01(rng)); };
    std::vector<std::pair<DiskPoint, DiskPoint>> pairs;
    for (int i = 0; i < cfg.pairs; ++i) {
      const DiskPoint z = draw();
      pairs.emplace_back(z, draw());
    }
    const BoundReport contraction = check_distance_contraction(metric, boundary, pairs, slack_tol);
    out.result["distance_contraction"] = io::to_json(contraction);
    out.passed = out.passed && contraction.passed;
  }
  return out;
}

json knots_json(const LogConcaveDiffeo& d) { return {{"x", d.knots_x()}, {"h", d.knots_h()}}; }

Outcome run_lemma(const RunConfig& cfg, const std::map<std::string, double>& tol, json& inputs) {
  if (cfg.trials < 1) throw UsageError("--trials must be positive");
  inputs["which"] = cfg.which;
  inputs["trials"] = cfg.trials;
  inputs["seed"] = cfg.seed;
  const double slack_tol = tol.at("slack");
  Outcome out;
  if (cfg.which == "propi1") {
    const auto grid = lemma_grid();
    const Propi1Batch batch = propi1_batch(cfg.seed, cfg.trials, grid, slack_tol);
    const SlackScan identity = propi1_scan(LogConcaveDiffeo::identity(), grid);
    out.result["grid_points"] = grid.size();
    out.result["min_slack"] = batch.min_slack;
    out.result["worst"] = {{"seed", batch.worst.seed},
                           {"knot_count", batch.worst.knot_count},
                           {"x", batch.worst.scan.worst},
                           {"min_slack", batch.worst.scan.min_slack}};
    out.result["failure_count"] = batch.failures.size();
    out.result["identity"] = {{"min_slack", identity.min_slack},
                              {"max_slack", identity.max_slack},
                              {"equality_everywhere", std::max(std::abs(identity.min_slack),
                                                               std::abs(identity.max_slack)) <= slack_tol}};
    if (!batch.failures.empty()) {
      json failures = json::array();
      for (const auto& f : batch.failures) {
        failures.push_back({{"seed", f.seed},
                            {"knot_count", f.knot_count},
                            {"min_slack", f.scan.min_slack},
                            {"x", f.scan.worst},
                            {"knots", knots_json(generate_logconcave(f.seed, f.knot_count))}});
      }
      io::write_json_file(cfg.output_dir / "failures.json", failures);
    }
    out.passed = batch.failures.empty();
    return out;
  }
  if (cfg.which == "lema") {
    std::vector<Metric1D> metrics;
    if (!cfg.metric_spec_path.empty()) {
      metrics.push_back(load_metric(cfg, inputs));
    } else {
      metrics = {families::constant(), families::cosine(), families::parabolic(1.5),
                 families::lemma_psi_mollified(81, 0.1, 0.01)};
    }
    std::mt19937_64 rng(cfg.seed);
    std::vector<double> vs;
    for (int i = 0; i < cfg.trials; ++i) vs.push_back(-1 + 2 * uniform01(rng));
    json per_metric = json::array();
    double overall = std::numeric_limits<double>::infinity();
    write_csv(cfg.output_dir / "lema.csv", [&](std::ostream& os) {
      os << "metric,v,slack\n";
      for (const Metric1D& m : metrics) {
        double worst = std::numeric_limits<double>::infinity();
        double worst_v = 0;
        for (double v : vs) {
          if (!(std::abs(v) < 1)) continue;
          const double s = lema_slack(m, v);
          os << m.name() << ',' << f17(v) << ',' << f17(s) << '\n';
          if (!(s >= worst)) {
            worst = s;
            worst_v = v;
          }
        }
        overall = std::min(overall, worst);
        per_metric.push_back({{"metric", m.name()}, {"min_slack", worst}, {"worst_v", worst_v}});
      }
    });
    out.result["metrics"] = per_metric;
    out.result["min_slack"] = overall;
    out.passed = overall >= -slack_tol;
    return out;
  }
  throw UsageError("--which must be propi1 or lema");
}

Outcome run_sweep(const RunConfig& cfg, const std::map<std::string, double>& tol, json& inputs) {
  inputs["family"] = cfg.family;
  Outcome out;
  std::vector<SweepRecord> rows;
  if (cfg.family == "psi") {
    inputs["n_max"] = cfg.n_max;
    rows = sharpness_sweep(cfg.n_max);
    bool increasing = true;
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i > 0 && !(rows[i].ratio > rows[i - 1].ratio)) increasing = false;
      top = std::max(top, rows[i].ratio);
    }
    out.result["increasing"] = increasing;
    out.result["max_ratio"] = top;
    out.result["ratio_at_n_max"] = rows.back().ratio;
    out.passed = increasing && top <= 1 + tol.at("ratio");
  } else if (cfg.family == "r-ratio") {
    inputs["k_max"] = cfg.k_max;
    inputs["k_count"] = cfg.k_count;
    inputs["x_max"] = cfg.x_max;
    inputs["x_count"] = cfg.x_count;
    rows = r_ratio_sweep(cfg.k_max, cfg.k_count, cfg.x_max, cfg.x_count);
    double top = -std::numeric_limits<double>::infinity();
    for (const auto& row : rows) top = std::max(top, row.ratio);
    out.result["max_ratio"] = top;
    out.passed = top <= 1 + tol.at("r_ratio");
  } else {
    throw UsageError("--family must be psi or r-ratio");
  }
  out.result["rows"] = rows.size();
  write_csv(cfg.output_dir / "sweep.csv", [&](std::ostream& os) { io::write_sweep_csv(rows, os); });
  return out;
}

Outcome run_gallery(const RunConfig& cfg, const std::map<std::string, double>& tol, json& inputs) {
  inputs["name"] = cfg.name;
  ExampleReport report;
  if (cfg.name == "negative-curvature") {
    inputs["n"] = cfg.n;
    report = run_negative_curvature_example(cfg.n);
  } else if (cfg.name == "zero-curvature") {
    inputs["c"] = cfg.c;
    inputs["radius"] = cfg.radius;
    report = run_zero_curvature_example(cfg.c, ring_grid(cfg.radius, cfg.rings, cfg.angles));
  } else if (cfg.name == "strip") {
    inputs["k"] = cfg.k;
    report = run_strip_example(cfg.k);
  } else if (cfg.name == "half-plane") {
    report = run_halfplane_example();
  } else {
    throw UsageError("--name must be negative-curvature, zero-curvature, strip or half-plane");
  }
  report.claim_tolerance = tol.at("claim");
  report.finish();
  Outcome out;
  out.result = io::to_json(report);
  out.passed = report.passed();
  return out;
}

bool numeric_failure(ErrorKind kind) {
  return kind == ErrorKind::no_convergence || kind == ErrorKind::non_integrable ||
         kind == ErrorKind::numeric_inversion_failure;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

int dispatch(const RunConfig& cfg) {
  try {
    std::map<std::string, double> tol = default_tolerances(cfg.subcommand);
    for (const auto& [label, value] : cfg.tolerance_overrides) {
      if (!tol.count(label)) {
        throw UsageError("unknown tolerance label '" + label + "' for " + to_string(cfg.subcommand));
      }
      if (!(value >= 0) || !std::isfinite(value)) throw UsageError("tolerance '" + label + "' must be >= 0");
      tol[label] = value;
    }
    if (!cfg.metric_spec_path.empty() && !fs::exists(cfg.metric_spec_path)) {
      throw UsageError("metric spec " + cfg.metric_spec_path.string() + " does not exist");
    }
    if (cfg.boundary_spec_path && !fs::exists(*cfg.boundary_spec_path)) {
      throw UsageError("boundary spec " + cfg.boundary_spec_path->string() + " does not exist");
    }
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec || !fs::is_directory(cfg.output_dir)) {
      throw UsageError("output directory " + cfg.output_dir.string() + " is not writable");
    }
    write_text(cfg.output_dir / "metadata.json",
               json{{"timestamp", utc_now()}, {"argv", cfg.argv}, {"subcommand", to_string(cfg.subcommand)}}.dump(2) +
                   "\n");

    try {
      json inputs = json::object();
      Outcome outcome;
      switch (cfg.subcommand) {
        case Subcommand::curvature: outcome = run_curvature(cfg, tol, inputs); break;
        case Subcommand::transform: outcome = run_transform(cfg, tol, inputs); break;
        case Subcommand::solve: outcome = run_solve(cfg, tol, inputs); break;
        case Subcommand::check_bounds: outcome = run_check_bounds(cfg, tol, inputs); break;
        case Subcommand::lemma: outcome = run_lemma(cfg, tol, inputs); break;
        case Subcommand::sweep: outcome = run_sweep(cfg, tol, inputs); break;
        case Subcommand::gallery: outcome = run_gallery(cfg, tol, inputs); break;
      }
      json tolerances = json::object();
      for (const auto& [label, value] : tol) tolerances[label] = value;
      const json summary{{"subcommand", to_string(cfg.subcommand)},
                         {"status", outcome.passed ? "pass" : "fail"},
                         {"tolerances", tolerances},
                         {"inputs", inputs},
                         {"result", outcome.result}};
      io::write_json_file(cfg.output_dir / "summary.json", summary);
      std::cout << to_string(cfg.subcommand) << ": " << (outcome.passed ? "pass" : "fail") << " ("
                << (cfg.output_dir / "summary.json").string() << ")\n";
      return outcome.passed ? 0 : 1;
    } catch (const Error& e) {
      if (!numeric_failure(e.kind())) throw;
      const json record{{"subcommand", to_string(cfg.subcommand)},
                        {"error", std::string(to_string(e.kind()))},
                        {"message", e.what()}};
      io::write_json_file(cfg.output_dir / "error.json", record);
      std::cout << record.dump() << '\n';
      return 3;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "input error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Numerical lab for Schwarz-type gradient bounds of R-harmonic functions"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  for (int i = 0; i < argc; ++i) cfg.argv.emplace_back(argv[i]);
  std::string output_dir;
  std::vector<std::string> overrides;
  std::string metric;
  std::string boundary;
  app.add_option("--output-dir,-o", output_dir,
                 std::string("Output directory (default: $") + kOutputDirEnv + " or ./schwarz-out)");
  app.add_option("--tolerance", overrides, "Tolerance override label=value (repeatable)");
  app.add_option("--seed", cfg.seed, "Random seed");

  auto* curvature = app.add_subcommand("curvature", "Curvature of a metric on a uniform interior grid");
  curvature->add_option("--metric", metric, "Metric spec JSON")->required();
  curvature->add_option("--grid-n", cfg.grid_n, "Grid points (default 999)");

  auto* transform = app.add_subcommand("transform", "Centred primitive H and its inverse");
  transform->add_option("--metric", metric, "Metric spec JSON")->required();
  transform->add_option("--grid-n", cfg.grid_n, "Grid points (default 999)");

  auto* solve = app.add_subcommand("solve", "Solve the R-harmonic Dirichlet problem; compare with the FD oracle");
  solve->add_option("--metric", metric, "Metric spec JSON")->required();
  solve->add_option("--boundary", boundary, "Boundary spec JSON")->required();
  solve->add_option("--grid-n", cfg.grid_n, "Cartesian grid size (default 201)");
  solve->add_flag("!--no-oracle", cfg.oracle, "Skip the finite-difference oracle");

  auto* bounds = app.add_subcommand("check-bounds", "Gradient bounds on a ring grid");
  bounds->add_option("--metric", metric, "Metric spec JSON")->required();
  bounds->add_option("--boundary", boundary, "Boundary spec JSON")->required();
  bounds->add_option("--radius", cfg.radius, "Outer ring radius");
  bounds->add_option("--rings", cfg.rings, "Number of rings including the origin");
  bounds->add_option("--angles", cfg.angles, "Points per ring");
  bounds->add_option("--pairs", cfg.pairs, "Random point pairs for the distance bound (0 skips)");

  auto* lemma = app.add_subcommand("lemma", "Randomized scalar lemma checks");
  lemma->add_option("--which", cfg.which, "propi1 or lema")->check(CLI::IsMember({"propi1", "lema"}));
  lemma->add_option("--trials", cfg.trials, "Number of random instances");
  lemma->add_option("--metric", metric, "Metric spec JSON (lema only; default: built-in unimodal set)");

  auto* sweep = app.add_subcommand("sweep", "Parameter sweeps");
  sweep->add_option("--family", cfg.family, "psi or r-ratio")->check(CLI::IsMember({"psi", "r-ratio"}));
  sweep->add_option("--n-max", cfg.n_max, "Largest n for the psi sweep");
  sweep->add_option("--k-max", cfg.k_max);
  sweep->add_option("--k-count", cfg.k_count);
  sweep->add_option("--x-max", cfg.x_max);
  sweep->add_option("--x-count", cfg.x_count);

  auto* gallery = app.add_subcommand("gallery", "Worked examples");
  gallery->add_option("--name", cfg.name, "negative-curvature, zero-curvature, strip or half-plane")
      ->required()
      ->check(CLI::IsMember({"negative-curvature", "zero-curvature", "strip", "half-plane"}));
  gallery->add_option("--n", cfg.n, "negative-curvature: f = tanh(n x)");
  gallery->add_option("--c", cfg.c, "zero-curvature: R = exp(c u)");
  gallery->add_option("--k", cfg.k, "strip: scale of g1");
  gallery->add_option("--radius", cfg.radius, "zero-curvature: grid radius");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::pair<CLI::App*, Subcommand> table[] = {
      {curvature, Subcommand::curvature}, {transform, Subcommand::transform}, {solve, Subcommand::solve},
      {bounds, Subcommand::check_bounds}, {lemma, Subcommand::lemma},         {sweep, Subcommand::sweep},
      {gallery, Subcommand::gallery}};
  for (const auto& [sub, kind] : table) {
    if (sub->parsed()) cfg.subcommand = kind;
  }
  cfg.metric_spec_path = metric;
  if (!boundary.empty()) cfg.boundary_spec_path = boundary;
  if (output_dir.empty()) {
    const char* env = std::getenv(kOutputDirEnv);
    output_dir = env && *env ? env : "schwarz-out";
  }
  cfg.output_dir = output_dir;
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    double value = 0;
    try {
      if (eq == std::string::npos) throw std::invalid_argument(item);
      std::size_t used = 0;
      value = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      std::cerr << "usage error: --tolerance expects label=value, got '" << item << "'\n";
      return 2;
    }
    cfg.tolerance_overrides[item.substr(0, eq)] = value;
  }
  return dispatch(cfg);
}

}  // namespace schwarz::cli
