#include "schwarz/errors.hpp"
#include "schwarz/io.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace schwarz;
using io::json;

TEST_CASE("metric specs") {
  CHECK(io::metric_from_json(json::parse(R"({"kind":"cosine"})")).name() == "cosine");
  const Metric1D e = io::metric_from_json(json::parse(R"({"kind":"exponential","params":{"c":2}})"));
  CHECK(e.density(0.5) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  const Metric1D t = io::metric_from_json(json::parse(R"({"kind":"tabulated","u":[-1,0,1],"R":[1,2,1]})"));
  CHECK(t.density(0.0) == doctest::Approx(2.0));
  const Metric1D m = io::metric_from_json(
      json::parse(R"({"kind":"lemma_psi_mollified","params":{"a":81,"s":0.1,"epsilon":0.01}})"));
  CHECK(m.density(0.5) > 0);
  CHECK_THROWS_AS(io::metric_from_json(json::parse(R"({"kind":"nope"})")), InvalidInput);
  CHECK_THROWS_AS(io::metric_from_json(json::parse(R"({"kind":"exponential"})")), InvalidInput);
  CHECK_THROWS_AS(io::metric_from_json(json::parse(R"({"kind":"exponential","params":{"c":"x"}})")), InvalidInput);
  CHECK_THROWS_AS(io::metric_from_json(json::parse(R"({"params":{}})")), InvalidInput);
  CHECK_THROWS_AS(io::metric_from_json(json::parse(R"({"kind":"cosine","extra":1})")), InvalidInput);
}

TEST_CASE("boundary specs") {
  const auto step = io::boundary_from_json(json::parse(R"({"kind":"expression-preset","name":"step"})"));
  CHECK(step.piecewise());
  const auto cosine =
      io::boundary_from_json(json::parse(R"({"kind":"expression-preset","name":"cosine","params":{"amplitude":0.5}})"));
  CHECK(cosine.value(0.0) == doctest::Approx(0.5));
  const auto samples = io::boundary_from_json(
      json::parse(R"({"kind":"samples","theta":[0,1.5707963267948966,3.141592653589793,4.71238898038469],
                      "values":[0.5,0,-0.5,0]})"));
  CHECK(samples.value(std::numbers::pi / 4) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK_THROWS_AS(io::boundary_from_json(json::parse(R"({"kind":"samples","theta":[0,1],"values":[0]})")),
                  InvalidInput);
  CHECK_THROWS_AS(io::boundary_from_json(json::parse(R"({"kind":"expression-preset","name":"zigzag"})")),
                  InvalidInput);
}

TEST_CASE("17 significant digits") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(std::stod(io::format_double(std::numbers::pi)) == std::numbers::pi);
}

TEST_CASE("report serialization") {
  BoundReport r{.name = "demo"};
  r.add(DiskPoint(0.1, 0.2), 1.0, 1.5);
  r.finish();
  const json j = io::to_json(r, true);
  CHECK(j["passed"] == true);
  CHECK(j["min_slack"] == 0.5);
  CHECK(j["points"].size() == 1);
  std::ostringstream csv;
  io::write_points_csv(r, csv);
  CHECK(csv.str() == "x,y,wx,wy,lhs,rhs,slack\n0.10000000000000001,0.20000000000000001,0.10000000000000001,"
                     "0.20000000000000001,1,1.5,0.5\n");
}
