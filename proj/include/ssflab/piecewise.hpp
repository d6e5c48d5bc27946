#pragma once

#include <functional>
#include <vector>

#include "ssflab/functions.hpp"
#include "ssflab/types.hpp"

namespace ssflab {

/// slope * x + intercept on one open interval.
struct AffinePiece {
  double slope = 0.0;
  double intercept = 0.0;

  double at(double x) const { return slope * x + intercept; }
  bool operator==(const AffinePiece&) const = default;
};

/// A compactly supported function given by strictly increasing breakpoints
/// t_0 < ... < t_m and one affine piece per open interval (t_k, t_{k+1});
/// identically zero outside [t_0, t_m].
///
/// Values at breakpoints are never meaningful: every comparison in this
/// library is made at interval midpoints, and `operator()` picks the piece
/// of the half-open interval [t_k, t_{k+1}).
class PiecewiseFunction {
 public:
  PiecewiseFunction() = default;
  PiecewiseFunction(std::vector<double> breakpoints, std::vector<AffinePiece> pieces);

  /// Piecewise constant function with values[k] on (t_k, t_{k+1}).
  static PiecewiseFunction step(std::vector<double> breakpoints, const std::vector<double>& values);

  const std::vector<double>& breakpoints() const { return t_; }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  std::size_t segment_count() const { return pieces_.size(); }
  bool empty() const { return pieces_.empty(); }

  double operator()(double x) const;
  /// Value at the midpoint of segment k.
  double midpoint_value(std::size_t k) const;
  std::vector<double> midpoints() const;

  /// Same function on the union of its breakpoints and `extra`.
  PiecewiseFunction refined(const std::vector<double>& extra) const;

  bool is_step() const;
  /// True when every piece is constant and exactly integral.
  bool is_integer_valued() const;

  double integral() const;
  /// int |f|, splitting a segment at the zero of its affine piece.
  double l1_norm() const;
  /// Smallest one-sided endpoint limit over all segments (0 for the empty function).
  double min_value() const;
  double max_abs_value() const;

  /// int p(x) f(x) dx in closed form.
  double integrate_against(const Polynomial& p) const;
  /// int g(x) f(x) dx by Gauss-Legendre with `order` nodes per segment.
  double integrate_against(const std::function<double(double)>& g, int order = 24) const;
  /// Dispatches to the closed form for polynomial functions.
  double integrate_against(const ScalarFunction& g, int order = 24) const;

  /// int f(x) / (x - z) dx for nonreal z (principal logarithm per segment).
  Complex cauchy_transform(Complex z) const;
  /// int f(x) / (x - z)^2 dx for nonreal z.
  Complex cauchy_transform_squared(Complex z) const;

  PiecewiseFunction operator+(const PiecewiseFunction& other) const;
  PiecewiseFunction operator-(const PiecewiseFunction& other) const;
  PiecewiseFunction operator*(double s) const;

 private:
  std::vector<double> t_;
  std::vector<AffinePiece> pieces_;
};

/// max over the midpoints of the common refinement of |f - g|.
double max_midpoint_difference(const PiecewiseFunction& f, const PiecewiseFunction& g);

}  // namespace ssflab
