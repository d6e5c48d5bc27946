#pragma once

#include <functional>
#include <vector>

#include "ssflab/functions.hpp"
#include "ssflab/hermitian.hpp"
#include "ssflab/piecewise.hpp"
#include "ssflab/report.hpp"

namespace ssflab {

/// xi(lambda; A, B) = #{eigenvalues of B below lambda} - #{eigenvalues of A below lambda},
/// one constant piece per interval between merged eigenvalues.
PiecewiseFunction krein_ssf(const OperatorPair& pair);
PiecewiseFunction krein_ssf_from_spectra(const RealVector& a_eigenvalues, const RealVector& b_eigenvalues);

/// Tr(f(A) - f(B)) against int f' xi.
VerificationReport krein_trace_check(const OperatorPair& pair, const ScalarFunction& fn, double tol = 1e-8);

/// det((A - z)(B - z)^{-1}), evaluated as det(I + X (B - z)^{-1}).
Complex perturbation_determinant(const OperatorPair& pair, Complex z);

/// exp(sum_k xi_k [Log(t_{k+1} - z) - Log(t_k - z)]) for piecewise constant xi.
Complex herglotz_exponential(const PiecewiseFunction& xi, Complex z);

/// Tr((B - z)^{-1} - (A - z)^{-1}) against int xi(lambda) (lambda - z)^{-2}.
VerificationReport resolvent_trace_check(const OperatorPair& pair, Complex z, double tol = 1e-10);

/// A = B + alpha (phi, .) phi.
struct RankOneModel {
  HermitianOperator b;
  ComplexVector phi;
  double alpha = 0.0;
};

struct RankOneXi {
  PiecewiseFunction xi;
  RealVector a_eigenvalues;
  /// G(z) = 1 + alpha (phi, (B - z)^{-1} phi).
  std::function<Complex(Complex)> g;
  /// max over interval midpoints of |arg G(lambda + i eps) / pi - xi|.
  double max_arg_discrepancy = 0.0;
  /// 0 <= xi <= 1 for alpha > 0, -1 <= xi <= 0 for alpha < 0.
  bool sign_pattern_holds = true;
};

/// Throws InvalidInput unless |phi| = 1 within 1e-12. Diagonal B uses the
/// secular equation for the spectrum of A, dense B a full eigendecomposition.
RankOneXi rank_one_xi(const RankOneModel& model);

/// Compares xi(lambda; A, B) with sign(phi') xi(phi(lambda); phi(A), phi(B)) at
/// interval midpoints. Throws InvalidInput if phi' changes sign on the joint
/// spectral interval (checked on a 10^4 point grid).
VerificationReport xi_invariance_check(const OperatorPair& pair, const Polynomial& phi, double tol = 1e-12);

struct XiRealization {
  RankOneModel model;
  double alpha = 0.0;
  PiecewiseFunction xi;
  /// Moment matches for k = 0..4, then the total mass.
  std::vector<VerificationReport> reports;
};

/// Rank-one pair whose xi approximates g / pi weakly: G(z) = exp(pi^{-1} int g/(lambda - z)),
/// alpha = pi^{-1} int g, spectral measure of B recovered by Stieltjes inversion
/// at height eps on an M-point grid over the support of g.
/// Throws InvalidInput unless g is a step function with 0 <= g <= 1.
XiRealization realize_xi(const PiecewiseFunction& g, int grid = 2000, double eps = 1e-3,
                         double moment_tol = 1e-2, double mass_tol = 1e-3);

/// 1 - (phi, (B - z)^{-1} phi) against the ratio of perturbation determinants
/// and against the det2 form with the factor exp(-(phi, (A - z)^{-1} phi)).
std::vector<VerificationReport> determinant_ratio_identity(const OperatorPair& pair, const ComplexVector& phi,
                                                           Complex z, double tol = 1e-10);

}  // namespace ssflab
