#pragma once

#include <functional>
#include <vector>

#include "ssflab/report.hpp"
#include "ssflab/types.hpp"

namespace ssflab {

struct LacunaryTerm {
  double frequency;    // n_k = 2^k
  double coefficient;  // a_k = k^{-2}
};

/// f(zeta) = sum_k a_k zeta^{n_k} with n_k = 2^k, a_k = k^{-2}, k = 1..K.
struct LacunarySeries {
  std::vector<LacunaryTerm> terms;

  /// sum |a_k| (bounded by pi^2/6).
  double coefficient_sum() const;
  /// sum n_k^2 a_k^2 (unbounded in K).
  double derivative_energy() const;
  /// Im f(e^{i theta}) = sum a_k sin(n_k theta).
  double imaginary_part(double theta) const;
  double imaginary_part_derivative(double theta) const;
};

LacunarySeries lacunary_series(int terms);

/// v on the circle: Im f + a on |theta| < pi/2, 0 elsewhere.
struct CircleDensity {
  std::vector<double> theta;  // equally spaced on [-pi, pi)
  std::vector<double> v;
  double shift = 0.0;         // a
  double min_imaginary = 0.0; // min over samples of Im f
};

/// The shift a is (1 + 1e-3) (-min Im f) when the sampled minimum is negative, else 0.
/// Throws InvalidInput for fewer than 2^14 samples.
CircleDensity circle_density(const LacunarySeries& series, int grid = 1 << 16);

/// Samples of eta(t) = v(2 arctan t) on (-1, 1): the circle samples with |theta| < pi/2
/// pulled back through t = tan(theta / 2).
struct LineSamples {
  std::vector<double> t;
  std::vector<double> eta;
};

LineSamples transplant(const CircleDensity& density);

/// A density on a compact interval with its derivative, for the probe.
struct ProbeDensity {
  std::function<double(double)> eta;
  std::function<double(double)> derivative;
  double lo = 0.0;
  double hi = 0.0;
  /// Interior points where the quadrature should split.
  std::vector<double> breaks;
};

/// eta(t) = Im f(2 arctan t) + a on (-1, 1), from the lacunary series and the shift of `density`.
ProbeDensity transplanted_density(const LacunarySeries& series, double shift);
/// chi_(lo, hi).
ProbeDensity indicator_density(double lo, double hi);

struct ProbePoint {
  double radius;
  Complex z;
  Complex value;  // D(z) = int eta(t) (t - z)^{-2} dt
  double error_estimate;
  bool converged;
};

struct ProbeResult {
  std::vector<ProbePoint> points;
  /// max(range Re D, range Im D) over the radii in [r_1 10^{-(d+1)}, r_1 10^{-d}], d = 0, 1, ...
  std::vector<double> decade_oscillation;
  bool all_converged = true;
};

/// D at z_m = lambda + r_m e^{i angle}, by adaptive Gauss-Kronrod with the first-order
/// Taylor part of eta at lambda integrated in closed form. Radii must decrease.
ProbeResult nontangential_probe(const ProbeDensity& density, double lambda, double angle,
                                const std::vector<double>& radii, double abs_tol = 1e-6);

/// Circle side int_{|theta| < pi/2} v(theta) (e^{i theta} - z)^{-2} i e^{i theta} dtheta against
/// (i/2)(w + i)^2 int eta(t) (t - w)^{-2} dt, w = i(1 - z)/(1 + z), z inside the unit disk.
VerificationReport circle_line_identity(const LacunarySeries& series, double shift, Complex z, double tol = 1e-5);

/// Radii r_1 10^{-j/per_decade}, j = 0..decades*per_decade.
std::vector<double> log_radii(double r1, int decades, int per_decade);

}  // namespace ssflab
