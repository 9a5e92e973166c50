#include "schwarz/mollifier.hpp"

#include "schwarz/errors.hpp"
#include "schwarz/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace schwarz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double raw_bump(double z) {
  const double w = 1 - z * z;
  return w > 0 ? std::exp(-1 / w) : 0.0;
}

}  // namespace

// ---------------------------------------------------------------------------
// PiecewiseQuadraticMap

PiecewiseQuadraticMap::PiecewiseQuadraticMap(std::vector<QuadraticPiece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw InvalidInput("piecewise map needs at least one piece");
  std::sort(pieces_.begin(), pieces_.end(), [](const auto& l, const auto& r) { return l.lo < r.lo; });
  if (std::abs(pieces_.front().lo + 1) > 1e-12 || std::abs(pieces_.back().hi - 1) > 1e-12) {
    throw InvalidInput("piecewise map must cover [-1, 1]");
  }
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (!(pieces_[i].hi > pieces_[i].lo)) throw InvalidInput("piecewise map has an empty piece");
    if (i > 0) {
      if (std::abs(pieces_[i].lo - pieces_[i - 1].hi) > 1e-12) throw InvalidInput("piecewise map pieces leave a gap");
      const double knot = pieces_[i].lo;
      if (std::abs(pieces_[i].value(knot) - pieces_[i - 1].value(knot)) > 1e-12) {
        throw InvalidInput("piecewise map is discontinuous at " + std::to_string(knot));
      }
    }
  }
  const auto& first = pieces_.front();
  const auto& last = pieces_.back();
  const double left_slope = first.slope(-1.0);
  const double right_slope = last.slope(1.0);
  line_.push_back({-kInf, -1.0, first.value(-1.0) + left_slope, left_slope, 0.0});
  line_.insert(line_.end(), pieces_.begin(), pieces_.end());
  line_.push_back({1.0, kInf, last.value(1.0) - right_slope, right_slope, 0.0});
}

PiecewiseQuadraticMap PiecewiseQuadraticMap::odd_extension(const std::vector<QuadraticPiece>& right_half) {
  std::vector<QuadraticPiece> all;
  for (const auto& p : right_half) {
    if (p.lo < 0) throw InvalidInput("odd_extension expects pieces on [0, 1]");
    all.push_back({-p.hi, -p.lo, -p.c0, p.c1, -p.c2});
    all.push_back(p);
  }
  return PiecewiseQuadraticMap(std::move(all));
}

PiecewiseQuadraticMap PiecewiseQuadraticMap::identity() { return PiecewiseQuadraticMap({{-1.0, 1.0, 0.0, 1.0, 0.0}}); }

namespace {

const QuadraticPiece& find_piece(const std::vector<QuadraticPiece>& line, double x) {
  auto it = std::lower_bound(line.begin(), line.end(), x, [](const QuadraticPiece& p, double v) { return p.hi < v; });
  if (it == line.end()) --it;
  return *it;
}

}  // namespace

double PiecewiseQuadraticMap::value(double x) const { return find_piece(line_, x).value(x); }
double PiecewiseQuadraticMap::derivative(double x) const { return find_piece(line_, x).slope(x); }

PiecewiseQuadraticMap psi_family(double a, double s) {
  if (!(s > 0 && s < 1)) throw ParameterOutOfRange("psi_family needs s in (0, 1)");
  const double u = a * s * s;
  if (!(a > 0) || !(u > 0 && u < 1)) throw ParameterOutOfRange("psi_family needs a > 0 and a s^2 in (0, 1)");
  return PiecewiseQuadraticMap::odd_extension({
      {0.0, s, 0.0, 1 + 2 * a * s - u, -a},
      {s, 1.0, u, 1 - u, 0.0},
  });
}

// ---------------------------------------------------------------------------
// Bump

const Bump& Bump::instance() {
  static const Bump bump;
  return bump;
}

Bump::Bump() : cells_(4096) {
  const auto rule = numerics::gauss_legendre(12);
  const double h = 2.0 / cells_;
  for (int k = 0; k < 3; ++k) {
    table_[k].assign(static_cast<std::size_t>(cells_) + 1, 0.0);
    for (int i = 0; i < cells_; ++i) {
      const double a = -1 + i * h;
      const double b = a + h;
      const double piece = numerics::integrate(
          rule, [k](double z) { return std::pow(z, k) * raw_bump(z); }, a, b);
      table_[k][static_cast<std::size_t>(i) + 1] = table_[k][static_cast<std::size_t>(i)] + piece;
    }
  }
  normalization_ = 1 / table_[0].back();
}

double Bump::value(double z) const { return normalization_ * raw_bump(z); }

double Bump::derivative(double z) const {
  const double w = 1 - z * z;
  if (w <= 0) return 0.0;
  return normalization_ * raw_bump(z) * (-2 * z / (w * w));
}

double Bump::cumulative(int k, double z) const {
  if (z <= -1) return 0.0;
  const auto& t = table_[k];
  if (z >= 1) return normalization_ * t.back();
  const double h = 2.0 / cells_;
  int i = std::min(static_cast<int>((z + 1) / h), cells_ - 1);
  const double a = -1 + i * h;
  const double s = (z - a) / h;
  const double fa = std::pow(a, k) * raw_bump(a);
  const double fb = std::pow(a + h, k) * raw_bump(a + h);
  const double ya = t[static_cast<std::size_t>(i)];
  const double yb = t[static_cast<std::size_t>(i) + 1];
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  return normalization_ * (h00 * ya + h10 * h * fa + h01 * yb + h11 * h * fb);
}

double Bump::moment(int k, double a, double b) const {
  a = std::clamp(a, -1.0, 1.0);
  b = std::clamp(b, -1.0, 1.0);
  if (b <= a) return 0.0;
  return cumulative(k, b) - cumulative(k, a);
}

// ---------------------------------------------------------------------------
// MollifiedMap

MollifiedMap::MollifiedMap(PiecewiseQuadraticMap psi, double epsilon)
    : psi_(std::move(psi)), epsilon_(epsilon), scale_(1.0) {
  const auto& line = psi_.line_pieces();
  for (std::size_t i = 1; i < line.size(); ++i) {
    const double k = line[i].lo;
    knots_.push_back(k);
    slope_jump_.push_back(line[i].slope(k) - line[i - 1].slope(k));
    curve_jump_.push_back(2 * line[i].c2 - 2 * line[i - 1].c2);
  }
  scale_ = 1 / phi(1.0);
}

double MollifiedMap::phi(double x) const {
  const Bump& bump = Bump::instance();
  double sum = 0;
  for (const auto& p : psi_.line_pieces()) {
    const double zlo = (x - p.hi) / epsilon_;
    const double zhi = (x - p.lo) / epsilon_;
    if (zhi <= -1 || zlo >= 1) continue;
    sum += p.value(x) * bump.moment(0, zlo, zhi) - epsilon_ * p.slope(x) * bump.moment(1, zlo, zhi) +
           p.c2 * epsilon_ * epsilon_ * bump.moment(2, zlo, zhi);
  }
  return sum;
}

double MollifiedMap::phi1(double x) const {
  const Bump& bump = Bump::instance();
  double sum = 0;
  for (const auto& p : psi_.line_pieces()) {
    const double zlo = (x - p.hi) / epsilon_;
    const double zhi = (x - p.lo) / epsilon_;
    if (zhi <= -1 || zlo >= 1) continue;
    sum += p.slope(x) * bump.moment(0, zlo, zhi) - 2 * p.c2 * epsilon_ * bump.moment(1, zlo, zhi);
  }
  return sum;
}

double MollifiedMap::phi2(double x) const {
  const Bump& bump = Bump::instance();
  double sum = 0;
  for (const auto& p : psi_.line_pieces()) {
    const double zlo = (x - p.hi) / epsilon_;
    const double zhi = (x - p.lo) / epsilon_;
    if (zhi <= -1 || zlo >= 1 || p.c2 == 0.0) continue;
    sum += 2 * p.c2 * bump.moment(0, zlo, zhi);
  }
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    sum += slope_jump_[i] * bump.value((x - knots_[i]) / epsilon_) / epsilon_;
  }
  return sum;
}

double MollifiedMap::phi3(double x) const {
  const Bump& bump = Bump::instance();
  double sum = 0;
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    const double z = (x - knots_[i]) / epsilon_;
    sum += curve_jump_[i] * bump.value(z) / epsilon_ + slope_jump_[i] * bump.derivative(z) / (epsilon_ * epsilon_);
  }
  return sum;
}

double MollifiedMap::value(double x) const { return scale_ * phi(x); }
double MollifiedMap::derivative(double x) const { return scale_ * phi1(x); }
double MollifiedMap::second(double x) const { return scale_ * phi2(x); }
double MollifiedMap::third(double x) const { return scale_ * phi3(x); }

Metric1D mollify(const PiecewiseQuadraticMap& psi, double epsilon) {
  if (!(epsilon > 0 && epsilon < 1)) throw InvalidInput("mollify needs epsilon in (0, 1)");
  if (std::abs(psi.value(1.0) - 1) > 1e-12 || std::abs(psi.value(-1.0) + 1) > 1e-12) {
    throw InvalidInput("mollify needs psi(-1) = -1 and psi(1) = 1");
  }
  for (int i = 0; i <= 200; ++i) {
    const double x = i / 200.0;
    if (std::abs(psi.value(x) + psi.value(-x)) > 1e-12) {
      throw InvalidInput("mollify needs an odd psi; fails at x = " + std::to_string(x));
    }
  }
  for (const auto& p : psi.pieces()) {
    if (p.slope(p.lo) < 0 || p.slope(p.hi) < 0) throw InvalidInput("mollify needs an increasing psi");
  }
  auto map = std::make_shared<const MollifiedMap>(psi, epsilon);
  return Metric1D({.name = "mollified(eps=" + std::to_string(epsilon) + ")",
                   .density = [map](double x) { return map->derivative(x); },
                   .d_density = [map](double x) { return map->second(x); },
                   .d2_density = [map](double x) { return map->third(x); },
                   .nonnegative_curvature = false});
}

}  // namespace schwarz
