#pragma once

#include <functional>
#include <vector>

#include "ssflab/types.hpp"

namespace ssflab::quadrature {

struct Rule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton iteration on P_n), exact for degree 2n-1.
const Rule& gauss_legendre(int n);

double integrate_fixed(const std::function<double(double)>& f, double a, double b, int n);
Complex integrate_fixed_complex(const std::function<Complex(double)>& f, double a, double b, int n);

struct AdaptiveResult {
  Complex value;
  double error_estimate = 0.0;
  bool converged = false;
  int intervals = 0;
};

struct AdaptiveOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_intervals = 20000;
};

/// Globally adaptive 15-point Gauss-Kronrod integration of a complex integrand
/// over [a, b]. The interval is first split at every interior point of
/// `breaks`; subdivision then always bisects the worst subinterval.
AdaptiveResult integrate_adaptive(const std::function<Complex(double)>& f, double a, double b,
                                  const AdaptiveOptions& options = {},
                                  const std::vector<double>& breaks = {});

double integrate_adaptive_real(const std::function<double(double)>& f, double a, double b,
                               const AdaptiveOptions& options = {},
                               const std::vector<double>& breaks = {});

}  // namespace ssflab::quadrature
