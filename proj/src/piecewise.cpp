#include "ssflab/piecewise.hpp"

#include <algorithm>
#include <cmath>

#include "ssflab/quadrature.hpp"

namespace ssflab {

PiecewiseFunction::PiecewiseFunction(std::vector<double> breakpoints, std::vector<AffinePiece> pieces)
    : t_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (t_.empty() && pieces_.empty()) return;
  if (t_.size() != pieces_.size() + 1) {
    throw InvalidInput("piecewise function: need exactly one piece per interval");
  }
  for (std::size_t k = 0; k + 1 < t_.size(); ++k) {
    if (!(t_[k] < t_[k + 1])) throw InvalidInput("piecewise function: breakpoints must be strictly increasing");
  }
  for (double t : t_)
    if (!std::isfinite(t)) throw InvalidInput("piecewise function: non-finite breakpoint");
  if (pieces_.empty()) t_.clear();
}

PiecewiseFunction PiecewiseFunction::step(std::vector<double> breakpoints, const std::vector<double>& values) {
  std::vector<AffinePiece> pieces;
  pieces.reserve(values.size());
  for (double v : values) pieces.push_back({0.0, v});
  return PiecewiseFunction(std::move(breakpoints), std::move(pieces));
}

double PiecewiseFunction::operator()(double x) const {
  if (pieces_.empty() || x < t_.front() || x >= t_.back()) return 0.0;
  const auto k = static_cast<std::size_t>(std::upper_bound(t_.begin(), t_.end(), x) - t_.begin()) - 1;
  return pieces_[k].at(x);
}

double PiecewiseFunction::midpoint_value(std::size_t k) const {
  return pieces_[k].at(0.5 * (t_[k] + t_[k + 1]));
}

std::vector<double> PiecewiseFunction::midpoints() const {
  std::vector<double> m;
  m.reserve(pieces_.size());
  for (std::size_t k = 0; k < pieces_.size(); ++k) m.push_back(0.5 * (t_[k] + t_[k + 1]));
  return m;
}

PiecewiseFunction PiecewiseFunction::refined(const std::vector<double>& extra) const {
  std::vector<double> grid = t_;
  grid.insert(grid.end(), extra.begin(), extra.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.size() < 2) return {};
  std::vector<AffinePiece> pieces;
  pieces.reserve(grid.size() - 1);
  std::size_t k = 0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double mid = 0.5 * (grid[i] + grid[i + 1]);
    if (pieces_.empty() || mid < t_.front() || mid > t_.back()) {
      pieces.push_back({0.0, 0.0});
      continue;
    }
    while (k + 1 < pieces_.size() && t_[k + 1] <= mid) ++k;
    pieces.push_back(pieces_[k]);
  }
  return PiecewiseFunction(std::move(grid), std::move(pieces));
}

bool PiecewiseFunction::is_step() const {
  return std::all_of(pieces_.begin(), pieces_.end(), [](const AffinePiece& p) { return p.slope == 0.0; });
}

bool PiecewiseFunction::is_integer_valued() const {
  return std::all_of(pieces_.begin(), pieces_.end(), [](const AffinePiece& p) {
    return p.slope == 0.0 && std::nearbyint(p.intercept) == p.intercept;
  });
}

double PiecewiseFunction::integral() const {
  double s = 0.0;
  for (std::size_t k = 0; k < pieces_.size(); ++k) s += (t_[k + 1] - t_[k]) * midpoint_value(k);
  return s;
}

double PiecewiseFunction::l1_norm() const {
  double s = 0.0;
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const double a = t_[k], b = t_[k + 1];
    const double fa = pieces_[k].at(a), fb = pieces_[k].at(b);
    if ((fa >= 0.0 && fb >= 0.0) || (fa <= 0.0 && fb <= 0.0)) {
      s += 0.5 * (b - a) * std::abs(fa + fb);
    } else {
      // Sign change: the two triangles on either side of the root.
      const double root = a + (b - a) * fa / (fa - fb);
      s += 0.5 * (root - a) * std::abs(fa) + 0.5 * (b - root) * std::abs(fb);
    }
  }
  return s;
}

double PiecewiseFunction::min_value() const {
  if (pieces_.empty()) return 0.0;
  double m = 0.0;  // the function vanishes outside its support
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    m = std::min({m, pieces_[k].at(t_[k]), pieces_[k].at(t_[k + 1])});
  }
  return m;
}

double PiecewiseFunction::max_abs_value() const {
  double m = 0.0;
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    m = std::max({m, std::abs(pieces_[k].at(t_[k])), std::abs(pieces_[k].at(t_[k + 1]))});
  }
  return m;
}

double PiecewiseFunction::integrate_against(const Polynomial& p) const {
  double s = 0.0;
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const Polynomial q = (p * Polynomial({pieces_[k].intercept, pieces_[k].slope})).antiderivative();
    s += q(t_[k + 1]) - q(t_[k]);
  }
  return s;
}

double PiecewiseFunction::integrate_against(const std::function<double(double)>& g, int order) const {
  double s = 0.0;
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const AffinePiece piece = pieces_[k];
    s += quadrature::integrate_fixed([&](double x) { return g(x) * piece.at(x); }, t_[k], t_[k + 1], order);
  }
  return s;
}

double PiecewiseFunction::integrate_against(const ScalarFunction& g, int order) const {
  if (g.is_polynomial()) return integrate_against(g.polynomial());
  return integrate_against([&g](double x) { return g.f(x); }, order);
}

Complex PiecewiseFunction::cauchy_transform(Complex z) const {
  require_nonreal(z, "cauchy_transform");
  Complex s = 0.0;
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const double a = t_[k], b = t_[k + 1];
    const AffinePiece p = pieces_[k];
    // (s x + c)/(x - z) = s + (s z + c)/(x - z). For nonreal z, a - z and
    // b - z lie in the same open half-plane, so the principal logarithms
    // differ by less than pi and their difference is the path integral.
    s += p.slope * (b - a) + (p.slope * z + p.intercept) * (std::log(b - z) - std::log(a - z));
  }
  return s;
}

Complex PiecewiseFunction::cauchy_transform_squared(Complex z) const {
  require_nonreal(z, "cauchy_transform_squared");
  Complex s = 0.0;
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const double a = t_[k], b = t_[k + 1];
    const AffinePiece p = pieces_[k];
    // Antiderivative of (s x + c)/(x - z)^2: s Log(x - z) - (s z + c)/(x - z).
    const Complex c = p.slope * z + p.intercept;
    s += p.slope * (std::log(b - z) - std::log(a - z)) - c / (b - z) + c / (a - z);
  }
  return s;
}

namespace {

PiecewiseFunction combine(const PiecewiseFunction& f, const PiecewiseFunction& g, double sign) {
  if (g.empty()) return f;
  if (f.empty()) return g * sign;
  const PiecewiseFunction rf = f.refined(g.breakpoints());
  const PiecewiseFunction rg = g.refined(f.breakpoints());
  std::vector<AffinePiece> pieces;
  pieces.reserve(rf.segment_count());
  for (std::size_t k = 0; k < rf.segment_count(); ++k) {
    pieces.push_back({rf.pieces()[k].slope + sign * rg.pieces()[k].slope,
                      rf.pieces()[k].intercept + sign * rg.pieces()[k].intercept});
  }
  return PiecewiseFunction(rf.breakpoints(), std::move(pieces));
}

}  // namespace

PiecewiseFunction PiecewiseFunction::operator+(const PiecewiseFunction& other) const {
  return combine(*this, other, 1.0);
}

PiecewiseFunction PiecewiseFunction::operator-(const PiecewiseFunction& other) const {
  return combine(*this, other, -1.0);
}

PiecewiseFunction PiecewiseFunction::operator*(double s) const {
  std::vector<AffinePiece> pieces = pieces_;
  for (AffinePiece& p : pieces) {
    p.slope *= s;
    p.intercept *= s;
  }
  return PiecewiseFunction(t_, std::move(pieces));
}

double max_midpoint_difference(const PiecewiseFunction& f, const PiecewiseFunction& g) {
  const PiecewiseFunction d = f - g;
  double m = 0.0;
  for (std::size_t k = 0; k < d.segment_count(); ++k) m = std::max(m, std::abs(d.midpoint_value(k)));
  return m;
}

}  // namespace ssflab
