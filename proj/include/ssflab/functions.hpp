#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ssflab/hermitian.hpp"

namespace ssflab {

/// Real polynomial with ascending coefficients c0 + c1 x + c2 x^2 + ...
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);

  static Polynomial monomial(int degree, double coefficient = 1.0);

  const std::vector<double>& coefficients() const { return c_; }
  int degree() const;

  double operator()(double x) const;
  Complex operator()(Complex z) const;

  Polynomial derivative() const;
  /// Antiderivative vanishing at 0.
  Polynomial antiderivative() const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(double s) const;

 private:
  std::vector<double> c_;
};

/// A test function together with its first two derivatives.
///
/// Polynomial functions carry exact formal derivatives and are integrated
/// against piecewise data in closed form; general functions are integrated by
/// Gauss-Legendre quadrature on each segment.
class ScalarFunction {
 public:
  using Evaluator = std::function<double(double)>;

  ScalarFunction(Polynomial p);  // NOLINT: implicit on purpose
  ScalarFunction(std::string name, Evaluator f, Evaluator df, Evaluator d2f = nullptr);

  bool is_polynomial() const { return poly_.has_value(); }
  const Polynomial& polynomial() const { return *poly_; }
  bool has_second_derivative() const { return static_cast<bool>(d2f_); }
  const std::string& name() const { return name_; }

  double f(double x) const { return f_(x); }
  double df(double x) const { return df_(x); }
  /// Throws InvalidInput when no second derivative was supplied.
  double d2f(double x) const;

 private:
  std::optional<Polynomial> poly_;
  std::string name_;
  Evaluator f_, df_, d2f_;
};

/// f(H) = U f(Lambda) U*. Throws DomainError naming an eigenvalue where f is
/// not finite.
HermitianOperator apply_function(const HermitianOperator& h, const ScalarFunction& fn);
HermitianOperator apply_function(const HermitianOperator& h, const std::function<double(double)>& fn);

/// Dense U diag(g(lambda)) U* for a complex-valued g (e.g. exp(i t x)).
ComplexMatrix apply_complex_function(const HermitianOperator& h,
                                     const std::function<Complex(double)>& g);

/// Tr f(H) = sum_j f(lambda_j).
double trace_of_function(const HermitianOperator& h, const std::function<double(double)>& fn);

}  // namespace ssflab
