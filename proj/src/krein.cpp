#include "ssflab/krein.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/LU>

#include "ssflab/secular.hpp"

namespace ssflab {

namespace {

std::vector<double> to_std(const RealVector& v) { return {v.data(), v.data() + v.size()}; }

ComplexMatrix shifted_dense(const HermitianOperator& h, Complex z) {
  ComplexMatrix m = h.matrix();
  m.diagonal().array() -= z;
  return m;
}

}  // namespace

PiecewiseFunction krein_ssf_from_spectra(const RealVector& a_eigenvalues, const RealVector& b_eigenvalues) {
  const std::vector<double> t = merged_breakpoints({&a_eigenvalues, &b_eigenvalues});
  if (t.size() < 2) return {};
  std::vector<double> values;
  values.reserve(t.size() - 1);
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    const double mid = 0.5 * (t[k] + t[k + 1]);
    values.push_back(static_cast<double>(count_below(b_eigenvalues, mid) - count_below(a_eigenvalues, mid)));
  }
  return PiecewiseFunction::step(t, values);
}

PiecewiseFunction krein_ssf(const OperatorPair& pair) {
  return krein_ssf_from_spectra(pair.a().eigenvalues(), pair.b().eigenvalues());
}

VerificationReport krein_trace_check(const OperatorPair& pair, const ScalarFunction& fn, double tol) {
  const auto f = [&fn](double x) { return fn.f(x); };
  const double lhs = trace_of_function(pair.a(), f) - trace_of_function(pair.b(), f);
  const PiecewiseFunction xi = krein_ssf(pair);
  double rhs;
  if (fn.is_polynomial()) {
    rhs = xi.integrate_against(fn.polynomial().derivative());
  } else {
    rhs = xi.integrate_against([&fn](double x) { return fn.df(x); });
  }
  // Relative to the size of the traces being differenced.
  const auto mag = [&fn](double x) { return std::abs(fn.f(x)); };
  const double scale = std::max({std::abs(lhs), std::abs(rhs),
                                 trace_of_function(pair.a(), mag) + trace_of_function(pair.b(), mag)});
  VerificationReport r = identity_report("Tr(f(A)-f(B)) = int f' xi", "krein-trace-formula", lhs, rhs, tol, scale);
  r.note = fn.name();
  return r;
}

Complex perturbation_determinant(const OperatorPair& pair, Complex z) {
  require_nonreal(z, "perturbation_determinant");
  const Eigen::PartialPivLU<ComplexMatrix> lu(shifted_dense(pair.b(), z));
  const ComplexMatrix k = pair.perturbation() * lu.inverse();
  return (ComplexMatrix::Identity(pair.dim(), pair.dim()) + k).determinant();
}

Complex herglotz_exponential(const PiecewiseFunction& xi, Complex z) {
  require_nonreal(z, "herglotz_exponential");
  if (!xi.is_step()) throw InvalidInput("herglotz_exponential: xi must be piecewise constant");
  const auto& t = xi.breakpoints();
  Complex s = 0.0;
  for (std::size_t k = 0; k < xi.segment_count(); ++k) {
    // t_k - z and t_{k+1} - z share the half-plane of -z, so the difference of
    // principal logarithms is the logarithm of their ratio.
    s += xi.pieces()[k].intercept * (std::log(t[k + 1] - z) - std::log(t[k] - z));
  }
  return std::exp(s);
}

VerificationReport resolvent_trace_check(const OperatorPair& pair, Complex z, double tol) {
  require_nonreal(z, "resolvent_trace_check");
  const ComplexMatrix rb = Eigen::PartialPivLU<ComplexMatrix>(shifted_dense(pair.b(), z)).inverse();
  const ComplexMatrix ra = Eigen::PartialPivLU<ComplexMatrix>(shifted_dense(pair.a(), z)).inverse();
  const Complex lhs = (rb - ra).trace();
  const Complex rhs = krein_ssf(pair).cauchy_transform_squared(z);
  return identity_report("Tr((B-z)^-1 - (A-z)^-1) = int xi (l-z)^-2", "krein-resolvent-trace", lhs, rhs, tol);
}

RankOneXi rank_one_xi(const RankOneModel& model) {
  const Eigen::Index n = model.b.dim();
  if (model.phi.size() != n) throw InvalidInput("rank-one model: phi has the wrong dimension");
  if (std::abs(model.phi.norm() - 1.0) > 1e-12) throw InvalidInput("rank-one model: phi must be a unit vector");

  const RealVector& beta = model.b.eigenvalues();
  // Spectral weights |(u_j, phi)|^2 in eigenvalue order.
  RealVector w(n);
  if (model.b.is_diagonal()) {
    const ComplexMatrix u = model.b.eigenvectors();
    for (Eigen::Index j = 0; j < n; ++j) {
      Eigen::Index row = 0;
      u.col(j).cwiseAbs().maxCoeff(&row);
      w(j) = std::norm(model.phi(row));
    }
  } else {
    w = (model.b.eigenvectors().adjoint() * model.phi).cwiseAbs2();
  }

  RankOneXi out;
  if (model.b.is_diagonal()) {
    const std::vector<double> a = rank_one_update_eigenvalues(to_std(beta), to_std(w), model.alpha);
    out.a_eigenvalues = Eigen::Map<const RealVector>(a.data(), static_cast<Eigen::Index>(a.size()));
  } else {
    const ComplexMatrix a = model.b.matrix() + model.alpha * model.phi * model.phi.adjoint();
    out.a_eigenvalues = HermitianOperator(a).eigenvalues();
  }
  out.xi = krein_ssf_from_spectra(out.a_eigenvalues, beta);

  const double alpha = model.alpha;
  out.g = [beta, w, alpha](Complex z) {
    Complex s = 0.0;
    for (Eigen::Index j = 0; j < beta.size(); ++j) s += w(j) / (beta(j) - z);
    return 1.0 + alpha * s;
  };

  const double scale = std::max({1.0, std::abs(out.a_eigenvalues.minCoeff()), std::abs(out.a_eigenvalues.maxCoeff()),
                                 std::abs(beta.minCoeff()), std::abs(beta.maxCoeff())});
  const double eps = 1e-9 * scale;
  const std::vector<double> mids = out.xi.midpoints();
  for (std::size_t k = 0; k < mids.size(); ++k) {
    const double value = out.xi.pieces()[k].intercept;
    const double from_arg = std::arg(out.g(Complex(mids[k], eps))) / std::numbers::pi;
    out.max_arg_discrepancy = std::max(out.max_arg_discrepancy, std::abs(from_arg - value));
    if (alpha > 0.0 && (value < 0.0 || value > 1.0)) out.sign_pattern_holds = false;
    if (alpha < 0.0 && (value > 0.0 || value < -1.0)) out.sign_pattern_holds = false;
    if (alpha == 0.0 && value != 0.0) out.sign_pattern_holds = false;
  }
  return out;
}

VerificationReport xi_invariance_check(const OperatorPair& pair, const Polynomial& phi, double tol) {
  const Polynomial dphi = phi.derivative();
  const double lo = pair.spectral_lower(), hi = pair.spectral_upper();
  constexpr int kGrid = 10000;
  double dmin = dphi(lo), dmax = dphi(lo);
  for (int i = 0; i <= kGrid; ++i) {
    const double v = dphi(lo + (hi - lo) * i / kGrid);
    dmin = std::min(dmin, v);
    dmax = std::max(dmax, v);
  }
  if (!(dmin > 0.0) && !(dmax < 0.0)) {
    throw InvalidInput("invariance check: phi' vanishes or changes sign on the joint spectral interval");
  }
  const double sign = dmin > 0.0 ? 1.0 : -1.0;
  const PiecewiseFunction xi = krein_ssf(pair);
  const OperatorPair mapped(apply_function(pair.a(), ScalarFunction(phi)), apply_function(pair.b(), ScalarFunction(phi)));
  const PiecewiseFunction xi_mapped = krein_ssf(mapped);
  double worst = 0.0;
  for (double m : xi.midpoints()) worst = std::max(worst, std::abs(xi(m) - sign * xi_mapped(phi(m))));
  VerificationReport r = absolute_report("xi(l;A,B) = sign(phi') xi(phi(l);phi(A),phi(B))", "invariance-principle",
                                         worst, 0.0, tol);
  return r;
}

XiRealization realize_xi(const PiecewiseFunction& g, int grid, double eps, double moment_tol, double mass_tol) {
  if (!g.is_step()) throw InvalidInput("realize_xi: target must be a step function");
  for (std::size_t k = 0; k < g.segment_count(); ++k) {
    const double v = g.pieces()[k].intercept;
    if (v > 1.0) {
      std::ostringstream os;
      os << "realize_xi: target exceeds 1 on (" << g.breakpoints()[k] << ", " << g.breakpoints()[k + 1] << ')';
      throw InvalidInput(os.str());
    }
    if (v < 0.0) throw InvalidInput("realize_xi: target must be nonnegative");
  }
  if (grid < 2) throw InvalidInput("realize_xi: grid must have at least 2 points");
  if (!(eps > 0.0)) throw InvalidInput("realize_xi: probe height must be positive");

  std::vector<VerificationReport> reports;
  const double pi = std::numbers::pi;
  const double alpha = g.integral() / pi;

  const double lo = g.empty() ? 0.0 : g.breakpoints().front();
  const double hi = g.empty() ? 1.0 : g.breakpoints().back();
  const double h = (hi - lo) / grid;
  std::vector<double> nodes(static_cast<std::size_t>(grid));
  std::vector<double> weights(static_cast<std::size_t>(grid), 1.0 / grid);
  for (int i = 0; i < grid; ++i) nodes[static_cast<std::size_t>(i)] = lo + (i + 0.5) * h;

  if (alpha > 0.0) {
    double total = 0.0;
    for (int i = 0; i < grid; ++i) {
      const Complex z(nodes[static_cast<std::size_t>(i)], eps);
      const Complex big_g = std::exp(g.cauchy_transform(z) / pi);
      const double density = std::max(0.0, ((big_g - 1.0) / alpha).imag() / pi);
      weights[static_cast<std::size_t>(i)] = density * h;
      total += density * h;
    }
    if (!(total > 0.0)) throw NumericalFailure("realize_xi: recovered measure has no mass");
    for (double& wt : weights) wt /= total;
  }

  RealVector phi(grid);
  for (int i = 0; i < grid; ++i) phi(i) = std::sqrt(weights[static_cast<std::size_t>(i)]);
  phi /= phi.norm();

  const std::vector<double> a = rank_one_update_eigenvalues(nodes, weights, alpha);
  const RealVector a_eigs = Eigen::Map<const RealVector>(a.data(), static_cast<Eigen::Index>(a.size()));
  const RealVector b_eigs = Eigen::Map<const RealVector>(nodes.data(), grid);
  PiecewiseFunction xi = krein_ssf_from_spectra(a_eigs, b_eigs);

  for (int k = 0; k <= 4; ++k) {
    const Polynomial p = Polynomial::monomial(k);
    const double lhs = xi.integrate_against(p);
    const double rhs = g.integrate_against(p) / pi;
    std::ostringstream name;
    name << "int l^" << k << " xi = int l^" << k << " g/pi";
    reports.push_back(absolute_report(name.str(), "xi-realization-moment", lhs, rhs, moment_tol));
  }
  reports.push_back(absolute_report("int xi = alpha", "xi-realization-mass", xi.integral(), alpha, mass_tol));
  return XiRealization{RankOneModel{HermitianOperator::diagonal(nodes), phi.cast<Complex>(), alpha}, alpha,
                       std::move(xi), std::move(reports)};
}

std::vector<VerificationReport> determinant_ratio_identity(const OperatorPair& pair, const ComplexVector& phi,
                                                           Complex z, double tol) {
  require_nonreal(z, "determinant_ratio_identity");
  const Eigen::Index n = pair.dim();
  if (phi.size() != n) throw InvalidInput("determinant ratio: phi has the wrong dimension");
  if (std::abs(phi.norm() - 1.0) > 1e-12) throw InvalidInput("determinant ratio: phi must be a unit vector");

  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix x = pair.perturbation();
  const ComplexMatrix p = phi * phi.adjoint();
  const ComplexMatrix ra = Eigen::PartialPivLU<ComplexMatrix>(shifted_dense(pair.a(), z)).inverse();
  const ComplexVector rb_phi = Eigen::PartialPivLU<ComplexMatrix>(shifted_dense(pair.b(), z)).solve(phi);
  const Complex lhs = 1.0 - phi.dot(rb_phi);

  const ComplexMatrix num = -(x + p) * ra;
  const ComplexMatrix den = -x * ra;
  const Complex det_num = (id + num).determinant();
  const Complex det_den = (id + den).determinant();
  if (std::abs(det_den) < 1e-300) throw NumericalFailure("determinant ratio: singular denominator");

  // det2(I + K) = det(I + K) exp(-Tr K).
  const Complex det2_num = det_num * std::exp(-num.trace());
  const Complex det2_den = det_den * std::exp(-den.trace());
  const Complex correction = std::exp(-phi.dot(ra * phi));

  std::vector<VerificationReport> out;
  out.push_back(identity_report("1-(phi,(B-z)^-1 phi) = det ratio", "determinant-ratio", lhs, det_num / det_den, tol));
  out.push_back(identity_report("1-(phi,(B-z)^-1 phi) = det2 ratio * exp(-(phi,(A-z)^-1 phi))",
                                "determinant-ratio-det2", lhs, det2_num / det2_den * correction, tol));
  return out;
}

}  // namespace ssflab
