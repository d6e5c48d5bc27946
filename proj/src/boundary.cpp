#include "ssflab/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ssflab/quadrature.hpp"

namespace ssflab {

double LacunarySeries::coefficient_sum() const {
  double s = 0.0;
  for (const auto& t : terms) s += std::abs(t.coefficient);
  return s;
}

double LacunarySeries::derivative_energy() const {
  double s = 0.0;
  for (const auto& t : terms) s += t.frequency * t.frequency * t.coefficient * t.coefficient;
  return s;
}

double LacunarySeries::imaginary_part(double theta) const {
  double s = 0.0;
  for (const auto& t : terms) s += t.coefficient * std::sin(t.frequency * theta);
  return s;
}

double LacunarySeries::imaginary_part_derivative(double theta) const {
  double s = 0.0;
  for (const auto& t : terms) s += t.coefficient * t.frequency * std::cos(t.frequency * theta);
  return s;
}

LacunarySeries lacunary_series(int terms) {
  if (terms < 0) throw InvalidInput("lacunary series: term count must be nonnegative");
  if (terms > 40) throw InvalidInput("lacunary series: at most 40 terms");
  LacunarySeries s;
  for (int k = 1; k <= terms; ++k) s.terms.push_back({std::ldexp(1.0, k), 1.0 / (static_cast<double>(k) * k)});
  return s;
}

CircleDensity circle_density(const LacunarySeries& series, int grid) {
  if (grid < (1 << 14)) throw InvalidInput("circle density: need at least 2^14 samples");
  const double pi = std::numbers::pi;
  CircleDensity out;
  out.theta.resize(static_cast<std::size_t>(grid));
  std::vector<double> im(static_cast<std::size_t>(grid));
  out.min_imaginary = INFINITY;
  for (int j = 0; j < grid; ++j) {
    const double theta = -pi + 2.0 * pi * j / grid;
    out.theta[static_cast<std::size_t>(j)] = theta;
    im[static_cast<std::size_t>(j)] = series.imaginary_part(theta);
    out.min_imaginary = std::min(out.min_imaginary, im[static_cast<std::size_t>(j)]);
  }
  out.shift = out.min_imaginary < 0.0 ? (1.0 + 1e-3) * -out.min_imaginary : 0.0;
  out.v.resize(static_cast<std::size_t>(grid));
  for (std::size_t j = 0; j < out.theta.size(); ++j) {
    out.v[j] = std::abs(out.theta[j]) < 0.5 * pi ? im[j] + out.shift : 0.0;
  }
  return out;
}

LineSamples transplant(const CircleDensity& density) {
  LineSamples out;
  for (std::size_t j = 0; j < density.theta.size(); ++j) {
    const double theta = density.theta[j];
    if (std::abs(theta) >= 0.5 * std::numbers::pi) continue;
    out.t.push_back(std::tan(0.5 * theta));
    out.eta.push_back(density.v[j]);
  }
  return out;
}

namespace {

std::vector<double> uniform_breaks(double lo, double hi, int cells) {
  std::vector<double> b;
  for (int i = 1; i < cells; ++i) b.push_back(lo + (hi - lo) * i / cells);
  return b;
}

int cells_for(const LacunarySeries& series) {
  double top = 1.0;
  for (const auto& t : series.terms) top = std::max(top, t.frequency);
  return std::max(64, static_cast<int>(top));
}

}  // namespace

ProbeDensity transplanted_density(const LacunarySeries& series, double shift) {
  ProbeDensity d;
  d.eta = [series, shift](double t) { return series.imaginary_part(2.0 * std::atan(t)) + shift; };
  d.derivative = [series](double t) {
    return series.imaginary_part_derivative(2.0 * std::atan(t)) * 2.0 / (1.0 + t * t);
  };
  d.lo = -1.0;
  d.hi = 1.0;
  d.breaks = uniform_breaks(-1.0, 1.0, cells_for(series));
  return d;
}

ProbeDensity indicator_density(double lo, double hi) {
  if (!(hi > lo)) throw InvalidInput("indicator density: empty interval");
  ProbeDensity d;
  d.eta = [](double) { return 1.0; };
  d.derivative = [](double) { return 0.0; };
  d.lo = lo;
  d.hi = hi;
  return d;
}

ProbeResult nontangential_probe(const ProbeDensity& density, double lambda, double angle,
                                const std::vector<double>& radii, double abs_tol) {
  if (radii.empty()) throw InvalidInput("probe: no radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw InvalidInput("probe: radii must be positive");
    if (i > 0 && !(radii[i] < radii[i - 1])) throw InvalidInput("probe: radii must decrease");
  }
  const bool inside = lambda > density.lo && lambda < density.hi;
  const double e0 = inside ? density.eta(lambda) : 0.0;
  const double e1 = inside ? density.derivative(lambda) : 0.0;
  std::vector<double> breaks = density.breaks;
  if (inside) breaks.push_back(lambda);

  quadrature::AdaptiveOptions opts;
  opts.abs_tol = abs_tol;
  opts.rel_tol = 0.0;
  opts.max_intervals = 400000;

  ProbeResult out;
  const Complex dir = std::polar(1.0, angle);
  for (double r : radii) {
    const Complex z = lambda + r * dir;
    // Subtract the first-order Taylor part of eta at lambda and add it back in closed form.
    const auto integrand = [&](double t) {
      const double smooth = density.eta(t) - e0 - e1 * (t - lambda);
      const Complex d = t - z;
      return smooth / (d * d);
    };
    const quadrature::AdaptiveResult q = quadrature::integrate_adaptive(integrand, density.lo, density.hi, opts, breaks);
    const Complex j0 = 1.0 / (density.lo - z) - 1.0 / (density.hi - z);
    const Complex j1 = std::log(density.hi - z) - std::log(density.lo - z) + (z - lambda) * j0;
    const Complex value = q.value + e0 * j0 + e1 * j1;
    out.points.push_back({r, z, value, q.error_estimate, q.converged});
    out.all_converged = out.all_converged && q.converged;
  }

  const double r1 = radii.front();
  const int decades = static_cast<int>(std::floor(std::log10(r1 / radii.back()) + 1e-9));
  for (int d = 0; d < decades; ++d) {
    const double upper = r1 * std::pow(10.0, -d) * (1.0 + 1e-9);
    const double lower = r1 * std::pow(10.0, -(d + 1)) * (1.0 - 1e-9);
    double re_lo = INFINITY, re_hi = -INFINITY, im_lo = INFINITY, im_hi = -INFINITY;
    for (const ProbePoint& p : out.points) {
      if (p.radius > upper || p.radius < lower) continue;
      re_lo = std::min(re_lo, p.value.real());
      re_hi = std::max(re_hi, p.value.real());
      im_lo = std::min(im_lo, p.value.imag());
      im_hi = std::max(im_hi, p.value.imag());
    }
    out.decade_oscillation.push_back(re_hi >= re_lo ? std::max(re_hi - re_lo, im_hi - im_lo) : 0.0);
  }
  return out;
}

VerificationReport circle_line_identity(const LacunarySeries& series, double shift, Complex z, double tol) {
  if (!(std::abs(z) < 1.0)) throw InvalidInput("circle-line identity: z must lie inside the unit disk");
  const double pi = std::numbers::pi;
  const Complex i(0.0, 1.0);
  quadrature::AdaptiveOptions opts;
  opts.abs_tol = 1e-11;
  opts.rel_tol = 1e-11;
  opts.max_intervals = 400000;
  const int cells = cells_for(series);

  const auto circle = [&](double theta) {
    const Complex zeta = std::polar(1.0, theta);
    const Complex d = zeta - z;
    return (series.imaginary_part(theta) + shift) * i * zeta / (d * d);
  };
  const quadrature::AdaptiveResult lhs =
      quadrature::integrate_adaptive(circle, -0.5 * pi, 0.5 * pi, opts, uniform_breaks(-0.5 * pi, 0.5 * pi, cells));

  const Complex w = i * (1.0 - z) / (1.0 + z);
  const ProbeDensity eta = transplanted_density(series, shift);
  const auto line = [&](double t) {
    const Complex d = t - w;
    return eta.eta(t) / (d * d);
  };
  const quadrature::AdaptiveResult integral = quadrature::integrate_adaptive(line, -1.0, 1.0, opts, eta.breaks);
  const Complex rhs = 0.5 * i * (w + i) * (w + i) * integral.value;
  VerificationReport r = identity_report("circle integral of v = (i/2)(w+i)^2 int eta (t-w)^-2", "cayley-transplant",
                                         lhs.value, rhs, tol);
  if (!lhs.converged || !integral.converged) {
    r.passed = false;
    r.note = "quadrature did not converge";
  }
  return r;
}

std::vector<double> log_radii(double r1, int decades, int per_decade) {
  if (!(r1 > 0.0) || decades < 1 || per_decade < 1) throw InvalidInput("log radii: invalid arguments");
  std::vector<double> out;
  for (int j = 0; j <= decades * per_decade; ++j) {
    out.push_back(r1 * std::pow(10.0, -static_cast<double>(j) / per_decade));
  }
  return out;
}

}  // namespace ssflab
