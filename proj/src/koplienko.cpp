#include "ssflab/koplienko.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/LU>

#include "ssflab/krein.hpp"
#include "ssflab/measure.hpp"

namespace ssflab {

PiecewiseFunction koplienko_ssf(const OperatorPair& pair) {
  const PiecewiseFunction xi = krein_ssf(pair);
  if (xi.empty()) return {};
  const AtomicMeasure mu = coupling_measure(pair);
  const std::vector<Atom>& atoms = mu.atoms();
  const std::vector<double>& t = xi.breakpoints();

  std::vector<AffinePiece> pieces;
  pieces.reserve(xi.segment_count());
  std::size_t next_atom = 0;
  double mass = 0.0;      // mu((-inf, midpoint))
  double integral = 0.0;  // int_{t_0}^{t_k} xi
  for (std::size_t k = 0; k < xi.segment_count(); ++k) {
    const double mid = 0.5 * (t[k] + t[k + 1]);
    while (next_atom < atoms.size() && atoms[next_atom].position < mid) mass += atoms[next_atom++].weight;
    const double value = xi.pieces()[k].intercept;
    // mass - (integral + value (lambda - t_k)) in absolute coordinates.
    pieces.push_back({-value, mass - integral + value * t[k]});
    integral += value * (t[k + 1] - t[k]);
  }
  return PiecewiseFunction(t, std::move(pieces));
}

VerificationReport ko_trace_check(const OperatorPair& pair, const ScalarFunction& fn, double tol) {
  const auto f = [&fn](double x) { return fn.f(x); };
  const AtomicMeasure mu = coupling_measure(pair);
  const double lhs = trace_of_function(pair.a(), f) - trace_of_function(pair.b(), f) -
                     mu.integrate([&fn](double x) { return fn.df(x); });
  const PiecewiseFunction eta = koplienko_ssf(pair);
  double rhs;
  if (fn.is_polynomial()) {
    rhs = eta.integrate_against(fn.polynomial().derivative().derivative());
  } else {
    rhs = eta.integrate_against([&fn](double x) { return fn.d2f(x); });
  }
  const auto mag = [&fn](double x) { return std::abs(fn.f(x)); };
  double scale = trace_of_function(pair.a(), mag) + trace_of_function(pair.b(), mag);
  for (const Atom& at : mu.atoms()) scale += std::abs(at.weight * fn.df(at.position));
  scale = std::max({scale, std::abs(lhs), std::abs(rhs)});
  VerificationReport r =
      identity_report("Tr(f(A)-f(B)-X f'(B)) = int f'' eta", "koplienko-trace-formula", lhs, rhs, tol, scale);
  r.note = fn.name();
  return r;
}

PiecewiseFunction delta_eta(const HermitianOperator& a, const HermitianOperator& b, const HermitianOperator& c) {
  if (a.dim() != b.dim() || b.dim() != c.dim()) throw InvalidInput("delta_eta: dimension mismatch");
  const OperatorPair ab(a, b);
  const AtomicMeasure mu_c = coupling_measure(c, ab);
  const AtomicMeasure mu_b = coupling_measure(b, ab);

  std::vector<double> positions;
  for (const Atom& at : mu_c.atoms()) positions.push_back(at.position);
  for (const Atom& at : mu_b.atoms()) positions.push_back(at.position);
  std::sort(positions.begin(), positions.end());
  std::vector<double> t;
  for (const Cluster& cl : cluster_sorted(positions)) t.push_back(cl.value);
  if (t.size() < 2) return {};

  std::vector<double> values;
  values.reserve(t.size() - 1);
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    const double mid = 0.5 * (t[k] + t[k + 1]);
    values.push_back(mu_c.mass_below(mid) - mu_b.mass_below(mid));
  }
  return PiecewiseFunction::step(t, values);
}

VerificationReport delta_eta_identity_check(const HermitianOperator& a, const HermitianOperator& b,
                                            const HermitianOperator& c, const Polynomial& g, double tol) {
  const PiecewiseFunction d = delta_eta(a, b, c);
  const double lhs = d.integrate_against(g.derivative());
  const ComplexMatrix x = a.matrix() - b.matrix();
  const ComplexMatrix gb = apply_function(b, ScalarFunction(g)).matrix();
  const ComplexMatrix gc = apply_function(c, ScalarFunction(g)).matrix();
  const double rhs = (x * (gb - gc)).trace().real();
  return identity_report("int g' delta_eta = Tr(X(g(B)-g(C)))", "chain-rule-defect", lhs, rhs, tol);
}

VerificationReport chain_rule_check(const HermitianOperator& a, const HermitianOperator& b,
                                    const HermitianOperator& c, double tol) {
  const PiecewiseFunction eta_ac = koplienko_ssf(OperatorPair(a, c));
  const PiecewiseFunction eta_ab = koplienko_ssf(OperatorPair(a, b));
  const PiecewiseFunction eta_bc = koplienko_ssf(OperatorPair(b, c));
  const PiecewiseFunction residual = eta_ac - (eta_ab + eta_bc + delta_eta(a, b, c));
  const auto& t = residual.breakpoints();
  double radius = 0.0;
  for (double x : t) radius = std::max(radius, std::abs(x));
  const double min_width = 10.0 * kMergeTolerance * (1.0 + radius);
  double worst = 0.0;
  for (std::size_t k = 0; k < residual.segment_count(); ++k) {
    if (t[k + 1] - t[k] <= min_width) continue;
    worst = std::max(worst, std::abs(residual.midpoint_value(k)));
  }
  return absolute_report("eta(A,C) = eta(A,B) + eta(B,C) + delta_eta", "corrected-chain-rule", worst, 0.0, tol);
}

VerificationReport stability_check(const HermitianOperator& a, const HermitianOperator& b,
                                   const HermitianOperator& c, double tol) {
  const PiecewiseFunction diff = koplienko_ssf(OperatorPair(a, c)) - koplienko_ssf(OperatorPair(b, c));
  const double lhs = diff.l1_norm();
  const double ab = OperatorPair(a, b).hilbert_schmidt_norm();
  const double bc = OperatorPair(b, c).hilbert_schmidt_norm();
  return upper_bound_report("int|eta(A,C)-eta(B,C)| <= |A-B|_2(|A-B|_2/2 + |B-C|_2)", "koplienko-stability", lhs,
                            ab * (0.5 * ab + bc), tol);
}

Complex det2(const OperatorPair& pair, Complex z) {
  require_nonreal(z, "det2");
  ComplexMatrix shifted = pair.b().matrix();
  shifted.diagonal().array() -= z;
  const ComplexMatrix k = pair.perturbation() * Eigen::PartialPivLU<ComplexMatrix>(shifted).inverse();
  const ComplexMatrix id = ComplexMatrix::Identity(pair.dim(), pair.dim());
  return (id + k).determinant() * std::exp(-k.trace());
}

VerificationReport det2_identity_check(const OperatorPair& pair, Complex z, double tol) {
  const Complex lhs = det2(pair, z);
  const Complex rhs = std::exp(-koplienko_ssf(pair).cauchy_transform_squared(z));
  return identity_report("det2 = exp(-int eta (l-z)^-2)", "det2-koplienko", lhs, rhs, tol);
}

double ModifiedKoSSF::operator()(double lambda) const {
  if (breakpoints.empty() || lambda < breakpoints.front()) return 0.0;
  if (lambda >= breakpoints.back()) return tail;
  const auto k = static_cast<std::size_t>(std::upper_bound(breakpoints.begin(), breakpoints.end(), lambda) -
                                          breakpoints.begin()) - 1;
  const double u = lambda + shift;
  return pieces[k][0] + pieces[k][1] * u + pieces[k][2] * u * u;
}

PiecewiseFunction ModifiedKoSSF::finite_part() const {
  std::vector<AffinePiece> affine;
  affine.reserve(pieces.size());
  for (const auto& p : pieces) affine.push_back({p[1], p[0] + p[1] * shift});
  return PiecewiseFunction(breakpoints, std::move(affine));
}

double ModifiedKoSSF::pair_with(const ScalarFunction& fn) const {
  if (breakpoints.empty()) return 0.0;
  const PiecewiseFunction f = finite_part();
  const double finite = fn.is_polynomial() ? f.integrate_against(fn.polynomial().derivative().derivative())
                                           : f.integrate_against([&fn](double x) { return fn.d2f(x); });
  return finite - tail * fn.df(breakpoints.back());
}

namespace {

HermitianOperator shifted_inverse(const HermitianOperator& h, double shift, const char* name) {
  const double lowest = h.min_eigenvalue() + shift;
  if (!(lowest > 0.0)) {
    std::ostringstream os;
    os << "modified KoSSF: " << name << " + E is not positive definite (eigenvalue " << h.min_eigenvalue()
       << " + E = " << lowest << ')';
    throw InvalidInput(os.str());
  }
  return apply_function(h, [shift](double x) { return 1.0 / (x + shift); });
}

}  // namespace

ModifiedKoSSF modified_kossf(const HermitianOperator& a, const HermitianOperator& b, double shift) {
  if (a.dim() != b.dim()) throw InvalidInput("modified KoSSF: dimension mismatch");
  const OperatorPair inv(shifted_inverse(a, shift, "A"), shifted_inverse(b, shift, "B"));
  const PiecewiseFunction eta = koplienko_ssf(inv);

  ModifiedKoSSF out;
  out.shift = shift;
  if (eta.empty()) return out;

  // mu-segments in reverse are u-segments in increasing order (u = 1/mu).
  // With eta(mu) = s mu + c and H(u) = 2 int_0^u eta(1/v) v dv, the function is
  // u^2 eta(1/u) - H(u) = s u + c u^2 - 2 I - 2 s (u - u0) - c (u^2 - u0^2),
  // where I is H(u0)/2 accumulated over the earlier segments.
  const auto& mu = eta.breakpoints();
  const std::size_t m = eta.segment_count();
  double accumulated = 0.0;
  out.breakpoints.push_back(1.0 / mu[m] - shift);
  for (std::size_t j = m; j-- > 0;) {
    const double s = eta.pieces()[j].slope, c = eta.pieces()[j].intercept;
    const double u0 = 1.0 / mu[j + 1], u1 = 1.0 / mu[j];
    out.pieces.push_back({2.0 * s * u0 + c * u0 * u0 - 2.0 * accumulated, -s, 0.0});
    out.breakpoints.push_back(u1 - shift);
    accumulated += s * (u1 - u0) + 0.5 * c * (u1 * u1 - u0 * u0);
  }
  out.tail = -2.0 * accumulated;
  return out;
}

VerificationReport modified_trace_check(const HermitianOperator& a, const HermitianOperator& b, double shift,
                                        const ScalarFunction& fn, double tol) {
  const ModifiedKoSSF mod = modified_kossf(a, b, shift);
  const HermitianOperator a_inv = shifted_inverse(a, shift, "A");
  const HermitianOperator b_inv = shifted_inverse(b, shift, "B");
  const AtomicMeasure mu = coupling_measure(OperatorPair(a_inv, b_inv));
  const auto f = [&fn](double x) { return fn.f(x); };
  // g(mu) = f(1/mu - E), g'(mu) = -f'(1/mu - E) / mu^2.
  const double derivative_term = mu.integrate([&fn, shift](double m) { return -fn.df(1.0 / m - shift) / (m * m); });
  const double lhs = trace_of_function(a, f) - trace_of_function(b, f) - derivative_term;
  const double rhs = mod.pair_with(fn);
  const auto mag = [&fn](double x) { return std::abs(fn.f(x)); };
  const double scale = std::max({std::abs(lhs), std::abs(rhs), trace_of_function(a, mag) + trace_of_function(b, mag)});
  VerificationReport r = identity_report("Tr(f(A)-f(B)-x g'(b)) = int eta~ f''", "modified-koplienko-trace", lhs,
                                         rhs, tol, scale);
  r.note = fn.name();
  return r;
}

ApproximationResult approximation_convergence_check(const OperatorPair& pair, const std::vector<Eigen::Index>& sizes,
                                                    const std::vector<Polynomial>& tests, double tol) {
  const Eigen::Index n = pair.dim();
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1 || sizes[i] > n) throw InvalidInput("approximation check: size out of range");
    if (i > 0 && sizes[i] <= sizes[i - 1]) throw InvalidInput("approximation check: sizes must increase");
  }
  const PiecewiseFunction eta = koplienko_ssf(pair);
  const PiecewiseFunction xi = krein_ssf(pair);
  std::vector<double> eta_ref, xi_ref;
  for (const Polynomial& g : tests) {
    eta_ref.push_back(eta.integrate_against(g));
    xi_ref.push_back(xi.integrate_against(g));
  }
  auto errors_at = [&](Eigen::Index size) {
    const OperatorPair compressed(pair.a().leading_block(size), pair.b().leading_block(size));
    const PiecewiseFunction eta_n = koplienko_ssf(compressed);
    const PiecewiseFunction xi_n = krein_ssf(compressed);
    double e = 0.0, x = 0.0;
    for (std::size_t i = 0; i < tests.size(); ++i) {
      e = std::max(e, std::abs(eta_n.integrate_against(tests[i]) - eta_ref[i]));
      x = std::max(x, std::abs(xi_n.integrate_against(tests[i]) - xi_ref[i]));
    }
    return std::pair{e, x};
  };

  ApproximationResult out;
  out.sizes = sizes;
  for (Eigen::Index size : sizes) {
    const auto [e, x] = errors_at(size);
    out.eta_errors.push_back(e);
    out.xi_errors.push_back(x);
  }
  std::vector<std::size_t> proper;
  for (std::size_t i = 0; i < sizes.size(); ++i)
    if (sizes[i] < n) proper.push_back(i);
  out.trend_decreasing = true;
  if (proper.size() >= 2) {
    const std::size_t first = proper.front(), last = proper.back();
    out.trend_decreasing =
        out.eta_errors[last] <= out.eta_errors[first] && out.xi_errors[last] <= out.xi_errors[first];
  }
  const auto [e, x] = errors_at(n);
  out.final_report = absolute_report("compression moments at N = n", "compression-convergence", std::max(e, x), 0.0, tol);
  return out;
}

}  // namespace ssflab
