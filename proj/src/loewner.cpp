#include "ssflab/loewner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ssflab/measure.hpp"
#include "ssflab/quadrature.hpp"

namespace ssflab {

LoewnerMatrix loewner_matrix(const HermitianOperator& a, const HermitianOperator& b, const ScalarFunction& fn) {
  if (a.dim() != b.dim()) throw InvalidInput("Loewner matrix: dimension mismatch");
  LoewnerMatrix out{RealMatrix(b.dim(), a.dim()), a.eigenvalues(), b.eigenvalues()};
  const double radius = std::max(a.spectral_radius(), b.spectral_radius());
  const double merge = kMergeTolerance * (1.0 + radius);
  for (Eigen::Index k = 0; k < out.y.size(); ++k) {
    for (Eigen::Index l = 0; l < out.x.size(); ++l) {
      const double d = out.y(k) - out.x(l);
      out.l(k, l) = std::abs(d) <= merge ? 0.0 : (fn.f(out.y(k)) - fn.f(out.x(l))) / d;
    }
  }
  return out;
}

VerificationReport loewner_formula_check(const HermitianOperator& a, const HermitianOperator& b,
                                         const ScalarFunction& fn, double tol) {
  const LoewnerMatrix lm = loewner_matrix(a, b, fn);
  const ComplexMatrix phi = a.eigenvectors();
  const ComplexMatrix psi = b.eigenvectors();
  const ComplexMatrix lhs = psi.adjoint() * (apply_function(b, fn).matrix() - apply_function(a, fn).matrix()) * phi;
  const ComplexMatrix diff = psi.adjoint() * (b.matrix() - a.matrix()) * phi;
  const ComplexMatrix rhs = lm.l.cast<Complex>().cwiseProduct(diff);
  const double residual = (lhs - rhs).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, lhs.cwiseAbs().maxCoeff());
  VerificationReport r = absolute_report("Psi*(f(B)-f(A))Phi = L o Psi*(B-A)Phi", "loewner-formula",
                                         residual / scale, 0.0, tol);
  r.note = fn.name();
  return r;
}

double grid_lipschitz_constant(const ScalarFunction& fn, double lo, double hi, int grid) {
  if (grid < 2) throw InvalidInput("grid Lipschitz constant: grid must have at least 2 points");
  double m = 0.0;
  for (int i = 0; i < grid; ++i) m = std::max(m, std::abs(fn.df(lo + (hi - lo) * i / (grid - 1))));
  return (1.0 + 1e-6) * m;
}

VerificationReport bs_bound_check(const OperatorPair& pair, const ScalarFunction& fn, int grid) {
  const double lip = grid_lipschitz_constant(fn, pair.spectral_lower(), pair.spectral_upper(), grid);
  const double lhs = (apply_function(pair.a(), fn).matrix() - apply_function(pair.b(), fn).matrix()).norm();
  VerificationReport r = upper_bound_report("|f(A)-f(B)|_2 <= L |A-B|_2", "birman-solomyak", lhs,
                                            lip * pair.hilbert_schmidt_norm(), 0.0);
  r.note = fn.name();
  return r;
}

ComplexMatrix duhamel_derivative(const HermitianOperator& b, const ComplexMatrix& x, double t, int nodes) {
  if (nodes < 16) throw InvalidInput("DuHamel derivative: quadrature order must be at least 16");
  if (x.rows() != b.dim() || x.cols() != b.dim()) throw InvalidInput("DuHamel derivative: dimension mismatch");
  const ComplexMatrix u = b.eigenvectors();
  const RealVector& beta = b.eigenvalues();
  const ComplexMatrix xt = u.adjoint() * x * u;
  const Complex i(0.0, 1.0);
  // In the eigenbasis of B the integrand is X~_jk e^{i s b_j} e^{i (t - s) b_k}.
  auto integrate = [&](int order) {
    const quadrature::Rule& rule = quadrature::gauss_legendre(order);
    ComplexMatrix acc = ComplexMatrix::Zero(xt.rows(), xt.cols());
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double s = 0.5 * t * (rule.nodes[q] + 1.0);
      const ComplexVector left = (i * s * beta.array()).exp().matrix();
      const ComplexVector right = (i * (t - s) * beta.array()).exp().matrix();
      acc += rule.weights[q] * (left.asDiagonal() * xt * right.asDiagonal());
    }
    return ComplexMatrix(i * 0.5 * t * acc);
  };
  ComplexMatrix previous = integrate(nodes);
  for (int order = 2 * nodes; order <= 4096; order *= 2) {
    ComplexMatrix current = integrate(order);
    const double change = (current - previous).cwiseAbs().maxCoeff();
    const double size = std::max(1.0, current.cwiseAbs().maxCoeff());
    if (change <= 1e-9 * size) return ComplexMatrix(u * current * u.adjoint());
    previous = std::move(current);
  }
  throw NumericalFailure("DuHamel derivative: quadrature did not converge");
}

std::vector<VerificationReport> taylor_remainder_check(const OperatorPair& pair, double t, double budget) {
  const Complex i(0.0, 1.0);
  const auto phase = [&](double x) { return std::exp(i * t * x); };
  const ComplexMatrix ea = apply_complex_function(pair.a(), phase);
  const ComplexMatrix eb = apply_complex_function(pair.b(), phase);
  const ComplexMatrix d = duhamel_derivative(pair.b(), pair.perturbation(), t);
  const double hs = pair.hilbert_schmidt_norm();
  std::vector<VerificationReport> out;
  out.push_back(upper_bound_report("|e^{itA}-e^{itB}-D|_1 <= t^2/2 |X|_2^2", "duhamel-taylor-remainder",
                                   schatten_norm(ea - eb - d, 1.0), 0.5 * t * t * hs * hs, budget));
  out.push_back(upper_bound_report("|e^{itA}-e^{itB}|_1 <= |t| |X|_1", "exponential-trace-lipschitz",
                                   schatten_norm(ea - eb, 1.0), std::abs(t) * pair.trace_norm(), budget));
  std::ostringstream note;
  note << "t=" << t;
  for (auto& r : out) r.note = note.str();
  return out;
}

ConvexityResult convexity_suite(const ScalarFunction& fn, const HermitianOperator& a, const ComplexMatrix& x,
                                double tol, double fd_tol) {
  if (x.rows() != a.dim() || x.cols() != a.dim()) throw InvalidInput("convexity suite: dimension mismatch");
  const ComplexMatrix am = a.matrix();
  const HermitianOperator end(ComplexMatrix(am + x));
  const double lo = std::min(a.min_eigenvalue(), end.min_eigenvalue());
  const double hi = std::max(a.max_eigenvalue(), end.max_eigenvalue());
  const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
  constexpr int kGrid = 10000;
  for (int i = 0; i <= kGrid; ++i) {
    const double p = lo + (hi - lo) * i / kGrid;
    if (fn.d2f(p) < -1e-12 * scale) {
      std::ostringstream os;
      os << "convexity suite: f'' is negative at " << p;
      throw InvalidInput(os.str());
    }
  }
  const RealVector& ev = a.eigenvalues();
  for (Eigen::Index j = 0; j + 1 < ev.size(); ++j) {
    if (ev(j + 1) - ev(j) < 1e-6 * scale) {
      std::ostringstream os;
      os << "convexity suite: eigenvalue gap " << ev(j + 1) - ev(j) << " below 1e-6 * scale";
      throw InvalidInput(os.str());
    }
  }

  const auto f = [&fn](double v) { return fn.f(v); };
  const auto trace_at = [&](double s) { return trace_of_function(HermitianOperator(ComplexMatrix(am + s * x)), f); };

  ConvexityResult out;
  // Midpoint convexity over every symmetric triple of the grid 0, 0.1, ..., 1.
  std::vector<double> values;
  for (int j = 0; j <= 10; ++j) values.push_back(trace_at(0.1 * j));
  double magnitude = 1.0;
  for (double v : values) magnitude = std::max(magnitude, std::abs(v));
  double worst = -INFINITY;
  for (int lo_i = 0; lo_i <= 10; ++lo_i) {
    for (int hi_i = lo_i + 2; hi_i <= 10; hi_i += 2) {
      const int mid = (lo_i + hi_i) / 2;
      worst = std::max(worst, values[static_cast<std::size_t>(mid)] -
                                  0.5 * (values[static_cast<std::size_t>(lo_i)] + values[static_cast<std::size_t>(hi_i)]));
    }
  }
  out.reports.push_back(upper_bound_report("Tr f(mid) <= (Tr f(left) + Tr f(right))/2", "trace-convexity",
                                           worst / magnitude, 0.0, tol));

  // Tangent gap with the derivative term through the coupling measure of (A, X).
  const double derivative = coupling_measure(a, x).integrate([&fn](double v) { return fn.df(v); });
  const double gap = values.back() - values.front() - derivative;
  const double gap_scale = std::max({1.0, std::abs(values.back()), std::abs(values.front()), std::abs(derivative)});
  out.reports.push_back(lower_bound_report("Tr(f(A+X)-f(A)-X f'(A)) >= 0", "tangent-gap", gap / gap_scale, 0.0, tol));

  // Second derivative at 0 from the eigenvalue perturbation formula.
  const ComplexMatrix u = a.eigenvectors();
  const ComplexMatrix xt = u.adjoint() * x * u;
  double diagonal_part = 0.0, off_diagonal_part = 0.0;
  for (Eigen::Index j = 0; j < ev.size(); ++j) {
    diagonal_part += fn.d2f(ev(j)) * std::norm(xt(j, j));
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
      if (k == j) continue;
      off_diagonal_part += std::norm(xt(k, j)) * (fn.df(ev(j)) - fn.df(ev(k))) / (ev(j) - ev(k));
    }
  }
  out.formula_second_derivative = diagonal_part + off_diagonal_part;

  const double h = 1e-3;
  const double center = values.front();
  const auto second_difference = [&](double step) {
    return (trace_at(step) - 2.0 * center + trace_at(-step)) / (step * step);
  };
  const double coarse = second_difference(h);
  const double fine = second_difference(0.5 * h);
  out.fd_second_derivative = (4.0 * fine - coarse) / 3.0;
  const double d2_scale = std::max(1.0, std::abs(out.formula_second_derivative));
  out.reports.push_back(absolute_report("d2/ds2 Tr f(A+sX) = eigenvalue formula", "eigenvalue-second-derivative",
                                        out.formula_second_derivative / d2_scale,
                                        out.fd_second_derivative / d2_scale, fd_tol));
  out.reports.push_back(lower_bound_report("d2/ds2 Tr f(A+sX) >= 0", "eigenvalue-second-derivative-sign",
                                           out.formula_second_derivative / d2_scale, 0.0, tol));
  for (auto& r : out.reports) r.note = fn.name();
  return out;
}

}  // namespace ssflab
