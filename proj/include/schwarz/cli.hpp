#pragma once

// Subcommand front end. Every run writes summary.json (deterministic for
// fixed inputs and seed), metadata.json (timestamp, argv) and CSV artifacts
// into the output directory.
//
// Exit status: 0 all checks pass, 1 some bound/check failed, 2 usage or
// input error, 3 numeric failure (error.json written).

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace schwarz::cli {

enum class Subcommand { curvature, transform, solve, check_bounds, lemma, sweep, gallery };

const char* to_string(Subcommand s);

inline constexpr const char* kOutputDirEnv = "SCHWARZ_OUTPUT_DIR";

struct RunConfig {
  Subcommand subcommand = Subcommand::curvature;
  std::filesystem::path metric_spec_path;  // empty when the subcommand takes none
  std::optional<std::filesystem::path> boundary_spec_path;
  std::filesystem::path output_dir;
  std::map<std::string, double> tolerance_overrides;
  std::uint64_t seed = 1;

  // curvature, transform, solve
  int grid_n = 0;  // 0: subcommand default (999 / 201)
  bool oracle = true;
  // check-bounds
  double radius = 0.95;
  int rings = 24;
  int angles = 96;
  int pairs = 0;
  // lemma
  std::string which = "propi1";
  int trials = 10000;
  // sweep
  std::string family = "psi";
  int n_max = 1000;
  double k_max = 20;
  int k_count = 200;
  double x_max = 0.999;
  int x_count = 200;
  // gallery
  std::string name;
  int n = 3;
  double c = 1.0;
  double k = 1.0;

  std::vector<std::string> argv;  // recorded in metadata.json only
};

/// Default tolerance per label for a subcommand; overrides must use these labels.
std::map<std::string, double> default_tolerances(Subcommand s);

int dispatch(const RunConfig& config);

/// Parses the command line (CLI11) and dispatches.
int run(int argc, char** argv);

}  // namespace schwarz::cli
