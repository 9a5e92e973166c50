#include "schwarz/io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::path(SCHWARZ_TEST_WORKDIR) / "cli";

fs::path write_file(const std::string& name, const std::string& text) {
  fs::create_directories(kWork);
  const fs::path p = kWork / name;
  std::ofstream(p) << text;
  return p;
}

int run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + SCHWARZ_CLI + " " + args + " > " + (kWork / "stdout.txt").string() + " 2> " +
                          (kWork / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("check-bounds: cosine metric, step boundary") {
  const auto metric = write_file("cosine.json", R"({"kind":"cosine"})");
  const auto boundary = write_file("step.json", R"({"kind":"expression-preset","name":"step"})");
  const fs::path out = kWork / "bounds";
  CHECK(run_cli("check-bounds --metric " + metric.string() + " --boundary " + boundary.string() + " -o " +
                out.string()) == 0);
  const auto summary = schwarz::io::read_json_file(out / "summary.json");
  CHECK(summary["status"] == "pass");
  CHECK(summary["result"]["main"]["min_slack"].get<double>() >= -1e-9);
  CHECK(summary["tolerances"]["slack"] == 1e-9);
  CHECK(fs::exists(out / "points.csv"));
  CHECK(fs::exists(out / "metadata.json"));
}

TEST_CASE("gallery: negative curvature fails by design") {
  const fs::path out = kWork / "gallery";
  CHECK(run_cli("gallery --name negative-curvature --n 3 -o " + out.string()) == 1);
  const auto summary = schwarz::io::read_json_file(out / "summary.json");
  CHECK(summary["result"]["computed"]["S(0)"].get<double>() == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("malformed input is a usage error") {
  const auto bad = write_file("bad.json", R"({"kind": "cosine")");
  CHECK(run_cli("curvature --metric " + bad.string() + " -o " + (kWork / "bad").string()) == 2);
  CHECK(run_cli("curvature --metric " + (kWork / "missing.json").string() + " -o " + (kWork / "bad").string()) == 2);
  CHECK(run_cli("sweep --family psi --tolerance nonsense=1 -o " + (kWork / "bad").string()) == 2);
  CHECK(run_cli("frobnicate") == 2);
}

TEST_CASE("numeric failure writes an error record") {
  const auto metric = write_file("hyperbolic.json", R"({"kind":"hyperbolic"})");
  const fs::path out = kWork / "numeric";
  CHECK(run_cli("transform --metric " + metric.string() + " -o " + out.string()) == 3);
  const auto record = schwarz::io::read_json_file(out / "error.json");
  CHECK(record["error"] == "NonIntegrable");
}

TEST_CASE("summaries are byte-identical across runs; tolerance overrides are recorded") {
  const fs::path a = kWork / "rep_a";
  const fs::path b = kWork / "rep_b";
  CHECK(run_cli("lemma --which propi1 --trials 200 --seed 9 --tolerance slack=1e-8 -o " + a.string()) == 0);
  CHECK(run_cli("lemma --which propi1 --trials 200 --seed 9 --tolerance slack=1e-8", "SCHWARZ_OUTPUT_DIR=" + b.string()) ==
        0);
  CHECK(slurp(a / "summary.json") == slurp(b / "summary.json"));
  const auto summary = schwarz::io::read_json_file(a / "summary.json");
  CHECK(summary["tolerances"]["slack"] == 1e-8);
}

TEST_CASE("sweep and solve write their artifacts") {
  CHECK(run_cli("sweep --family psi --n-max 50 -o " + (kWork / "sweep").string()) == 0);
  const std::string csv = slurp(kWork / "sweep" / "sweep.csv");
  CHECK(csv.rfind("a,n,s,u,ratio\n", 0) == 0);

  const auto metric = write_file("exp.json", R"({"kind":"exponential","params":{"c":1}})");
  const auto boundary = write_file("cos.json", R"({"kind":"expression-preset","name":"cosine","params":{"amplitude":0.8}})");
  CHECK(run_cli("solve --metric " + metric.string() + " --boundary " + boundary.string() + " --grid-n 61 -o " +
                (kWork / "solve").string()) == 0);
  CHECK(fs::exists(kWork / "solve" / "oracle.csv"));
  CHECK(slurp(kWork / "solve" / "solution.csv").rfind("x,y,f\n", 0) == 0);
}
