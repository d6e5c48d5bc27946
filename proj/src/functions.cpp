#include "ssflab/functions.hpp"

#include <cmath>
#include <sstream>

namespace ssflab {

Polynomial::Polynomial(std::vector<double> coefficients) : c_(std::move(coefficients)) {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

Polynomial Polynomial::monomial(int degree, double coefficient) {
  std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
  c.back() = coefficient;
  return Polynomial(std::move(c));
}

int Polynomial::degree() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Complex Polynomial::operator()(Complex z) const {
  Complex acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial();
  std::vector<double> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
  std::vector<double> a(c_.size() + 1, 0.0);
  for (std::size_t k = 0; k < c_.size(); ++k) a[k + 1] = c_[k] / static_cast<double>(k + 1);
  return Polynomial(std::move(a));
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<double> s(std::max(c_.size(), other.c_.size()), 0.0);
  for (std::size_t k = 0; k < c_.size(); ++k) s[k] += c_[k];
  for (std::size_t k = 0; k < other.c_.size(); ++k) s[k] += other.c_[k];
  return Polynomial(std::move(s));
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (c_.empty() || other.c_.empty()) return Polynomial();
  std::vector<double> p(c_.size() + other.c_.size() - 1, 0.0);
  for (std::size_t j = 0; j < c_.size(); ++j)
    for (std::size_t k = 0; k < other.c_.size(); ++k) p[j + k] += c_[j] * other.c_[k];
  return Polynomial(std::move(p));
}

Polynomial Polynomial::operator*(double s) const {
  std::vector<double> p = c_;
  for (double& v : p) v *= s;
  return Polynomial(std::move(p));
}

ScalarFunction::ScalarFunction(Polynomial p) : poly_(std::move(p)) {
  const Polynomial d = poly_->derivative();
  const Polynomial d2 = d.derivative();
  const Polynomial f = *poly_;
  std::ostringstream os;
  os << "poly[";
  for (std::size_t k = 0; k < f.coefficients().size(); ++k) os << (k ? "," : "") << f.coefficients()[k];
  os << ']';
  name_ = os.str();
  f_ = [f](double x) { return f(x); };
  df_ = [d](double x) { return d(x); };
  d2f_ = [d2](double x) { return d2(x); };
}

ScalarFunction::ScalarFunction(std::string name, Evaluator f, Evaluator df, Evaluator d2f)
    : name_(std::move(name)), f_(std::move(f)), df_(std::move(df)), d2f_(std::move(d2f)) {
  if (!f_ || !df_) throw InvalidInput("scalar function: f and f' are required");
}

double ScalarFunction::d2f(double x) const {
  if (!d2f_) throw InvalidInput("scalar function '" + name_ + "': missing second derivative");
  return d2f_(x);
}

namespace {

RealVector mapped_eigenvalues(const HermitianOperator& h, const std::function<double(double)>& fn) {
  RealVector out(h.dim());
  for (Eigen::Index j = 0; j < h.dim(); ++j) {
    const double lambda = h.eigenvalues()(j);
    const double v = fn(lambda);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os.precision(17);
      os << "function not finite at eigenvalue " << lambda;
      throw DomainError(os.str());
    }
    out(j) = v;
  }
  return out;
}

}  // namespace

HermitianOperator apply_function(const HermitianOperator& h, const std::function<double(double)>& fn) {
  const RealVector values = mapped_eigenvalues(h, fn);
  if (h.is_diagonal()) {
    const RealVector& d = h.diagonal_entries();
    RealVector out(d.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) out(i) = fn(d(i));
    return HermitianOperator::diagonal(out);
  }
  const ComplexMatrix u = h.eigenvectors();
  return HermitianOperator(ComplexMatrix(u * values.cast<Complex>().asDiagonal() * u.adjoint()));
}

HermitianOperator apply_function(const HermitianOperator& h, const ScalarFunction& fn) {
  return apply_function(h, [&fn](double x) { return fn.f(x); });
}

ComplexMatrix apply_complex_function(const HermitianOperator& h,
                                     const std::function<Complex(double)>& g) {
  ComplexVector values(h.dim());
  for (Eigen::Index j = 0; j < h.dim(); ++j) values(j) = g(h.eigenvalues()(j));
  const ComplexMatrix u = h.eigenvectors();
  return u * values.asDiagonal() * u.adjoint();
}

double trace_of_function(const HermitianOperator& h, const std::function<double(double)>& fn) {
  return mapped_eigenvalues(h, fn).sum();
}

}  // namespace ssflab
