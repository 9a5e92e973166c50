#include "schwarz/harmonic.hpp"

#include "schwarz/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace schwarz {

using std::numbers::pi;

namespace {

constexpr double kTwoPi = 2 * pi;

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t;
}

void require_inside(DiskPoint z, const char* op) {
  if (!(std::norm(z) < 1.0)) {
    std::ostringstream os;
    os.precision(17);
    os << op << ": z = " << z << " is not inside the unit disk";
    throw OutsideDisk(os.str());
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// BoundaryData

void BoundaryData::sample() {
  const int n = static_cast<int>(samples_.size());
  for (int j = 0; j < n; ++j) {
    const double theta = kTwoPi * j / n;
    nodes_[j] = std::polar(1.0, theta);
    samples_[j] = value(theta);
  }
  for (int j = 0; j < n; ++j) {
    const double v = samples_[j];
    const bool ok = piecewise() ? (v >= lo_ && v <= hi_) : (v > lo_ && v < hi_);
    if (!ok) {
      std::ostringstream os;
      os.precision(17);
      os << "boundary value " << v << " at theta = " << kTwoPi * j / n << " leaves the target interval (" << lo_
         << ", " << hi_ << ")";
      throw InvalidInput(os.str());
    }
  }
}

BoundaryData BoundaryData::from_function(std::function<double(double)> values, int sample_count, double target_lo,
                                         double target_hi) {
  if (sample_count < 8) throw InvalidInput("boundary needs at least 8 samples");
  BoundaryData b;
  b.fn_ = std::move(values);
  b.lo_ = target_lo;
  b.hi_ = target_hi;
  b.samples_.resize(sample_count);
  b.nodes_.resize(sample_count);
  b.sample();
  return b;
}

BoundaryData BoundaryData::from_samples(std::vector<double> theta, std::vector<double> values, int sample_count,
                                        double target_lo, double target_hi) {
  if (theta.size() != values.size() || theta.size() < 2) {
    throw InvalidInput("boundary samples need matching theta/values arrays with at least two entries");
  }
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < theta.size(); ++i) pts.emplace_back(wrap_angle(theta[i]), values[i]);
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].first == pts[i - 1].first) throw InvalidInput("boundary samples repeat an angle");
  }
  auto interp = [pts = std::move(pts)](double t) {
    t = wrap_angle(t);
    auto it = std::upper_bound(pts.begin(), pts.end(), t, [](double v, const auto& p) { return v < p.first; });
    const auto& right = it == pts.end() ? pts.front() : *it;
    const auto& left = it == pts.begin() ? pts.back() : *(it - 1);
    double span = right.first - left.first;
    double offset = t - left.first;
    if (span <= 0) span += kTwoPi;
    if (offset < 0) offset += kTwoPi;
    return left.second + (right.second - left.second) * offset / span;
  };
  return from_function(interp, sample_count, target_lo, target_hi);
}

BoundaryData BoundaryData::piecewise_constant(std::vector<Arc> arcs, int sample_count, double target_lo,
                                              double target_hi) {
  if (arcs.empty()) throw InvalidInput("piecewise boundary needs at least one arc");
  double total = 0;
  for (auto& a : arcs) {
    if (!(a.end > a.begin)) throw InvalidInput("arc end must follow its begin");
    total += a.end - a.begin;
  }
  if (std::abs(total - kTwoPi) > 1e-12) throw InvalidInput("arcs must tile the circle");
  BoundaryData b;
  b.arcs_ = std::move(arcs);
  b.fn_ = [arcs = b.arcs_](double theta) {
    const double t = wrap_angle(theta);
    double on_edge_sum = 0;
    int on_edge = 0;
    for (const auto& a : arcs) {
      const double rel = wrap_angle(t - a.begin);
      const double len = a.end - a.begin;
      const bool at_begin = rel < 1e-14 || kTwoPi - rel < 1e-14;
      const bool at_end = std::abs(rel - len) < 1e-14;
      if (at_begin || at_end) {
        on_edge_sum += a.value;
        ++on_edge;
      } else if (rel < len) {
        return a.value;
      }
    }
    return on_edge > 0 ? on_edge_sum / on_edge : 0.0;
  };
  b.lo_ = target_lo;
  b.hi_ = target_hi;
  b.samples_.resize(sample_count);
  b.nodes_.resize(sample_count);
  b.sample();
  return b;
}

BoundaryData BoundaryData::constant(double c, int sample_count) {
  return from_function([c](double) { return c; }, sample_count);
}

BoundaryData BoundaryData::cosine(double amplitude, int sample_count) {
  return from_function([amplitude](double t) { return amplitude * std::cos(t); }, sample_count,
                       -std::max(1.0, std::abs(amplitude)) - 1e-15, std::max(1.0, std::abs(amplitude)) + 1e-15);
}

BoundaryData BoundaryData::step(double amplitude, int sample_count) {
  return piecewise_constant({{0.0, pi, amplitude}, {pi, kTwoPi, -amplitude}}, sample_count);
}

double BoundaryData::value(double theta) const { return fn_(theta); }

BoundaryData BoundaryData::mapped(const std::function<double(double)>& map, double target_lo,
                                  double target_hi) const {
  if (piecewise()) {
    std::vector<Arc> arcs = arcs_;
    for (auto& a : arcs) a.value = map(a.value);
    return piecewise_constant(std::move(arcs), sample_count(), target_lo, target_hi);
  }
  return from_function([fn = fn_, map](double t) { return map(fn(t)); }, sample_count(), target_lo, target_hi);
}

BoundaryData BoundaryData::resampled(int sample_count) const {
  if (piecewise()) return piecewise_constant(arcs_, sample_count, lo_, hi_);
  return from_function(fn_, sample_count, lo_, hi_);
}

// ---------------------------------------------------------------------------
// Poisson extension

namespace {

// Harmonic measure of the arc and its gradient; exact for any z in the disk.
double arc_measure(const Arc& a, DiskPoint z) {
  const double len = a.end - a.begin;
  if (len >= kTwoPi - 1e-15) return 1.0;
  const DiskPoint p = std::polar(1.0, a.begin) - z;
  const DiskPoint q = std::polar(1.0, a.end) - z;
  double angle = std::arg(q / p);
  if (angle < 0) angle += kTwoPi;
  return angle / pi - len / kTwoPi;
}

Gradient arc_measure_gradient(const Arc& a, DiskPoint z) {
  const double len = a.end - a.begin;
  if (len >= kTwoPi - 1e-15) return Gradient::Zero();
  const DiskPoint d = 1.0 / (std::polar(1.0, a.begin) - z) - 1.0 / (std::polar(1.0, a.end) - z);
  return Gradient(d.imag(), d.real()) / pi;
}

}  // namespace

BoundaryData random_smooth_boundary(std::uint64_t seed, double amplitude, int modes, bool odd, int sample_count) {
  if (!(amplitude > 0 && amplitude < 1) || modes < 1) {
    throw InvalidInput("random_smooth_boundary needs amplitude in (0, 1) and modes >= 1");
  }
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](double lo, double hi) { return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const double c0 = odd ? 0.0 : uniform(-0.5, 0.5);
  std::vector<double> a;
  std::vector<double> b;
  for (int k = 1; k <= modes; ++k) {
    a.push_back(uniform(-1, 1));
    b.push_back(uniform(-1, 1));
  }
  return BoundaryData::from_function(
      [=](double t) {
        double s = c0;
        for (int k = 1; k <= modes; ++k) {
          if (odd && k % 2 == 0) continue;
          s += (a[k - 1] * std::cos(k * t) + b[k - 1] * std::sin(k * t)) / k;
        }
        return amplitude * std::tanh(s);
      },
      sample_count);
}

double harmonic_extend(const BoundaryData& boundary, DiskPoint z) {
  require_inside(z, "harmonic_extend");
  if (boundary.piecewise()) {
    double sum = 0;
    for (const auto& a : boundary.arcs()) sum += a.value * arc_measure(a, z);
    return sum;
  }
  const auto& nodes = boundary.nodes();
  const auto& values = boundary.samples();
  // Divide by the discrete kernel mass instead of assuming it is 1: equal
  // far from the circle, and close to it the result stays a convex
  // combination of the samples.
  double sum = 0;
  double mass = 0;
  for (Eigen::Index j = 0; j < nodes.size(); ++j) {
    const double w = 1 / std::norm(nodes[j] - z);
    sum += values[j] * w;
    mass += w;
  }
  return sum / mass;
}

Gradient gradient_of(const BoundaryData& boundary, DiskPoint z) {
  require_inside(z, "gradient_of");
  if (boundary.piecewise()) {
    Gradient g = Gradient::Zero();
    for (const auto& a : boundary.arcs()) g += a.value * arc_measure_gradient(a, z);
    return g;
  }
  const auto& nodes = boundary.nodes();
  const auto& values = boundary.samples();
  DiskPoint derivative = 0;
  for (Eigen::Index j = 0; j < nodes.size(); ++j) {
    const DiskPoint d = nodes[j] - z;
    derivative += values[j] * nodes[j] / (d * d);
  }
  derivative *= 2.0 / static_cast<double>(nodes.size());
  return {derivative.real(), -derivative.imag()};
}

HarmonicField poisson_field(const BoundaryData& boundary) {
  return {[boundary](DiskPoint z) { return harmonic_extend(boundary, z); },
          [boundary](DiskPoint z) { return gradient_of(boundary, z); }, std::nullopt};
}

// ---------------------------------------------------------------------------
// R-harmonic lift

namespace {

BoundaryData lift_boundary(const Metric1D& metric, const BoundaryData& boundary) {
  const double lo = metric.lo();
  const double hi = metric.hi();
  auto lift = [&metric, lo, hi](double v) {
    if (v == hi) return metric.primitive_at_hi();
    if (v == lo) return metric.primitive_at_lo();
    return metric.primitive(v);
  };
  for (Eigen::Index j = 0; j < boundary.samples().size(); ++j) {
    const double v = boundary.samples()[j];
    if (!(v >= lo && v <= hi)) throw DomainError("boundary value " + std::to_string(v) + " is outside the metric domain");
  }
  const double plo = metric.primitive_at_lo();
  const double phi = metric.primitive_at_hi();
  if (boundary.piecewise()) {
    for (const auto& a : boundary.arcs()) {
      if ((a.value == lo && !std::isfinite(plo)) || (a.value == hi && !std::isfinite(phi))) {
        throw NonIntegrable("boundary touches an endpoint where the primitive of '" + metric.name() + "' diverges");
      }
    }
  }
  const double slack = 1e-12 * std::max(1.0, std::max(std::abs(plo), std::abs(phi)));
  return boundary.mapped(lift, std::isfinite(plo) ? plo - slack : plo, std::isfinite(phi) ? phi + slack : phi);
}

}  // namespace

RHarmonicSolution::RHarmonicSolution(Metric1D metric, const BoundaryData& boundary)
    : metric_(std::move(metric)), transformed_(lift_boundary(metric_, boundary)) {}

double RHarmonicSolution::potential(DiskPoint z) const { return harmonic_extend(transformed_, z); }
Gradient RHarmonicSolution::potential_gradient(DiskPoint z) const { return gradient_of(transformed_, z); }

double RHarmonicSolution::value(DiskPoint z) const { return metric_.inverse_primitive(potential(z)); }

Gradient RHarmonicSolution::gradient(DiskPoint z) const {
  const double f = value(z);
  return potential_gradient(z) / metric_.density(f);
}

double RHarmonicSolution::normalized(DiskPoint z) const {
  const double r = mass(metric_);
  const double centre = (metric_.primitive_at_hi() + metric_.primitive_at_lo()) / 2;
  return (potential(z) - centre) / r;
}

HarmonicField RHarmonicSolution::field() const {
  auto self = std::make_shared<const RHarmonicSolution>(*this);
  return {[self](DiskPoint z) { return self->value(z); }, [self](DiskPoint z) { return self->gradient(z); },
          metric_};
}

double solve_R_harmonic(const Metric1D& metric, const BoundaryData& boundary, DiskPoint z) {
  require_inside(z, "solve_R_harmonic");
  return RHarmonicSolution(metric, boundary).value(z);
}

// ---------------------------------------------------------------------------
// Diagnostics

namespace {

void require_stencil(DiskPoint z, double h, const char* op) {
  const DiskPoint offsets[] = {{h, 0}, {-h, 0}, {0, h}, {0, -h}};
  for (auto o : offsets) {
    if (!(std::norm(z + o) < 1.0)) {
      std::ostringstream os;
      os.precision(17);
      os << op << ": stencil of width " << h << " around " << z << " leaves the disk";
      throw StencilOutsideDisk(os.str());
    }
  }
}

}  // namespace

double pde_residual(const Metric1D& metric, const HarmonicField& field, DiskPoint z, double h) {
  require_stencil(z, h, "pde_residual");
  return plane_pde_residual(metric, field.evaluate, z, h);
}

double plane_pde_residual(const Metric1D& metric, const std::function<double(DiskPoint)>& f, DiskPoint z, double h) {
  const double f0 = f(z);
  const double fe = f(z + DiskPoint(h, 0));
  const double fw = f(z - DiskPoint(h, 0));
  const double fn = f(z + DiskPoint(0, h));
  const double fs = f(z - DiskPoint(0, h));
  const double laplacian = (fe + fw + fn + fs - 4 * f0) / (h * h);
  const double fx = (fe - fw) / (2 * h);
  const double fy = (fn - fs) / (2 * h);
  return laplacian + metric.d_density(f0) / metric.density(f0) * (fx * fx + fy * fy);
}

double hopf_holomorphy_residual(const Metric1D& metric, const HarmonicField& field, std::span<const DiskPoint> grid,
                                double h) {
  // Fields given by values only are differentiated at the same step.
  auto gradient = [&](DiskPoint z) {
    if (field.gradient) return field.gradient(z);
    return Gradient((field.evaluate(z + DiskPoint(h, 0)) - field.evaluate(z - DiskPoint(h, 0))) / (2 * h),
                    (field.evaluate(z + DiskPoint(0, h)) - field.evaluate(z - DiskPoint(0, h))) / (2 * h));
  };
  auto hopf = [&](DiskPoint z) {
    const Gradient g = gradient(z);
    const double r = metric.density(field.evaluate(z));
    const DiskPoint fz(g.x() / 2, -g.y() / 2);
    return r * r * fz * fz;
  };
  double worst = 0;
  for (DiskPoint z : grid) {
    require_stencil(z, field.gradient ? h : 2 * h, "hopf_holomorphy_residual");
    const DiskPoint dx = (hopf(z + DiskPoint(h, 0)) - hopf(z - DiskPoint(h, 0))) / (2 * h);
    const DiskPoint dy = (hopf(z + DiskPoint(0, h)) - hopf(z - DiskPoint(0, h))) / (2 * h);
    // Cauchy-Riemann for P + iQ: P_x = Q_y and P_y = -Q_x.
    worst = std::max({worst, std::abs(dx.real() - dy.imag()), std::abs(dy.real() + dx.imag())});
  }
  return worst;
}

}  // namespace schwarz
