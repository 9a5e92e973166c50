#include "schwarz/bounds.hpp"
#include "schwarz/errors.hpp"
#include "schwarz/gallery.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace schwarz;
using std::numbers::pi;

namespace {

const ExampleCheck& find_check(const ExampleReport& r, const std::string& label) {
  auto it = std::find_if(r.checks.begin(), r.checks.end(), [&](const ExampleCheck& c) { return c.label == label; });
  REQUIRE(it != r.checks.end());
  return *it;
}

}  // namespace

TEST_CASE("negative-curvature example") {
  const ExampleReport r1 = run_negative_curvature_example(1);
  CHECK(r1.computed.at("K(0)") == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(r1.passed());

  const ExampleReport r3 = run_negative_curvature_example(3);
  CHECK(std::abs(r3.computed.at("S(0)") - 3) <= 1e-9);
  CHECK(r3.flagged.empty());
  CHECK_FALSE(find_check(r3, "S(0) <= 4/pi").passed);
  CHECK_FALSE(r3.passed());

  const ExampleReport r5 = run_negative_curvature_example(5);
  const double sech = 1 / std::cosh(1.0);
  CHECK(r5.computed.at("|grad f|(0.2)") == doctest::Approx(5 * sech * sech).epsilon(1e-9));
  CHECK_THROWS_AS(run_negative_curvature_example(0), InvalidInput);
}

TEST_CASE("zero-curvature example") {
  const auto grid = ring_grid();
  for (double c : {0.5, 1.0, 2.0, -1.0}) {
    const ExampleReport r = run_zero_curvature_example(c, grid);
    CHECK(r.passed());
    CHECK(r.computed.at("curvature") <= 1e-10);
    CHECK(r.computed.at("min (4/pi)(1 - f^2) - A at z = 0") >= -1e-9);
  }
  CHECK_THROWS_AS(run_zero_curvature_example(0.0, grid), InvalidInput);
}

TEST_CASE("strip map") {
  for (double y : {-3.0, -0.5, 0.0, 2.0}) {
    const auto w = strip_phi({0, y});
    CHECK(std::abs(w.imag()) <= 1e-12);
    CHECK(std::abs(w.real()) < 1);
  }
  for (auto w : {std::complex<double>(0.3, 0.2), {-0.7, 1.1}, {0.0, -0.4}}) {
    CHECK(std::abs(strip_phi(strip_phi_inverse(w)) - w) <= 1e-12);
  }
  // (4/pi) artanh(z) maps the disk onto the strip with speed 4/pi at 0.
  CHECK(strip_hyperbolic_density(0.0) == doctest::Approx(pi / 4).epsilon(1e-15));
}

TEST_CASE("strip example") {
  const ExampleReport r = run_strip_example(1.0);
  CHECK(r.passed());
  CHECK(r.computed.at("K_rho") == doctest::Approx(-pi * pi / 4).epsilon(1e-12));
  CHECK(r.computed.at("K_varrho") <= 1e-4);
  CHECK_FALSE(r.claimed.at("lambda_0(iy)").gated);
  CHECK(r.computed.at("S(f(0))") == doctest::Approx(4 / pi).epsilon(1e-12));
  const ExampleReport r3 = run_strip_example(3.0);
  CHECK(r3.computed.at("S(f(0))") == doctest::Approx(12 / pi).epsilon(1e-12));
}

TEST_CASE("half-plane example") {
  const ExampleReport r = run_halfplane_example();
  CHECK(r.computed.at("t*") == doctest::Approx(-1.4771487424903).epsilon(1e-8));
  CHECK(r.computed.at("max Q") == doctest::Approx(1.0482337856229890).epsilon(1e-12));
  CHECK(r.flagged.empty());
  CHECK(find_check(r, "-(log R)'' = csch^2(x/2)/4").passed);
  // The closed form solves the equation for exp(-x), not 1 - exp(-x).
  CHECK(r.computed.at("max residual, R = exp(-x)") <= 1e-4);
  CHECK_FALSE(find_check(r, "pde residual with R = 1 - exp(-x) at 50 points").passed);
}
