#pragma once

// Worked examples with closed forms: a negative-curvature target where the
// quotient grows without bound, the exponential (flat) target, the strip
// automorphism, and a positive function on the right half-plane.

#include "schwarz/harmonic.hpp"

#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace schwarz {

enum class ClaimSource { stated, derived };

struct Claim {
  double value;
  ClaimSource source = ClaimSource::stated;
  bool gated = true;  // ungated claims are compared and recorded only
};

struct ExampleCheck {
  std::string label;
  bool passed;
  double value;      // measured quantity
  double threshold;  // what it was compared against
};

struct ExampleReport {
  std::string name;
  std::map<std::string, Claim> claimed{};
  std::map<std::string, double> computed{};
  /// |claimed - computed| for every claim, in label order.
  std::vector<std::pair<std::string, double>> discrepancies{};
  /// Gated claims whose discrepancy exceeds `claim_tolerance`.
  std::vector<std::string> flagged{};
  std::vector<ExampleCheck> checks{};
  std::vector<std::string> notes{};
  double claim_tolerance = 1e-3;

  void claim(const std::string& label, double value, ClaimSource source = ClaimSource::stated, bool gated = true);
  void compute(const std::string& label, double value);
  void check(const std::string& label, bool passed, double value, double threshold);
  /// Fills discrepancies and flagged; InvalidInput if a claim has no computed value.
  void finish();
  /// All checks pass and nothing is flagged.
  bool passed() const;
};

/// f = tanh(n x) for the target density 1/(1 - u^2).
ExampleReport run_negative_curvature_example(int n);

/// R = exp(c u): the first link of the gradient chain in closed form.
ExampleReport run_zero_curvature_example(double c, std::span<const DiskPoint> grid);

/// The strip automorphism phi taking the imaginary axis onto (-1, 1).
std::complex<double> strip_phi(std::complex<double> z);
std::complex<double> strip_phi_derivative(std::complex<double> z);
/// Newton inversion of strip_phi from 20 starting points in the strip.
/// NumericInversionFailure when none converges.
std::complex<double> strip_phi_inverse(std::complex<double> w);
/// Hyperbolic density of the strip |Re w| < 1, normalised like 1/(1 - |z|^2) on the disk.
double strip_hyperbolic_density(std::complex<double> w);
ExampleReport run_strip_example(double k);

/// x |grad f| / f along y = t x for the half-plane example.
double halfplane_quotient(double t);
/// log[pi / (pi/2 - atan(y/x))] for x > 0.
double halfplane_function(DiskPoint p);
ExampleReport run_halfplane_example();

}  // namespace schwarz
