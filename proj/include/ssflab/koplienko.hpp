#pragma once

#include <array>
#include <vector>

#include "ssflab/functions.hpp"
#include "ssflab/hermitian.hpp"
#include "ssflab/piecewise.hpp"
#include "ssflab/report.hpp"

namespace ssflab {

/// eta(lambda; A, B) = mu_{B,X}((-inf, lambda)) - int_{-inf}^lambda xi(t; A, B) dt,
/// assembled exactly on the merged eigenvalues of A and B.
PiecewiseFunction koplienko_ssf(const OperatorPair& pair);

/// Tr f(A) - Tr f(B) - Tr(X f'(B)) against int f'' eta.
VerificationReport ko_trace_check(const OperatorPair& pair, const ScalarFunction& fn, double tol = 1e-8);

/// Chain-rule defect delta_eta(lambda) = mu_{C,X}((-inf, lambda)) - mu_{B,X}((-inf, lambda)), X = A - B,
/// so that eta(.;A,C) = eta(.;A,B) + eta(.;B,C) + delta_eta.
PiecewiseFunction delta_eta(const HermitianOperator& a, const HermitianOperator& b, const HermitianOperator& c);

/// int g' delta_eta against Tr(X (g(B) - g(C))).
VerificationReport delta_eta_identity_check(const HermitianOperator& a, const HermitianOperator& b,
                                            const HermitianOperator& c, const Polynomial& g, double tol = 1e-10);

/// Largest midpoint residual of eta(.;A,C) - eta(.;A,B) - eta(.;B,C) - delta_eta.
/// Intervals shorter than the eigenvalue merge tolerance are skipped.
VerificationReport chain_rule_check(const HermitianOperator& a, const HermitianOperator& b,
                                    const HermitianOperator& c, double tol = 1e-10);

/// int |eta(.;A,C) - eta(.;B,C)| <= |A-B|_2 (|A-B|_2 / 2 + |B-C|_2).
VerificationReport stability_check(const HermitianOperator& a, const HermitianOperator& b,
                                   const HermitianOperator& c, double tol = 1e-10);

/// det((A - z)(B - z)^{-1}) exp(-Tr(X (B - z)^{-1})).
Complex det2(const OperatorPair& pair, Complex z);
/// det2 against exp(-int eta(lambda) (lambda - z)^{-2} dlambda).
VerificationReport det2_identity_check(const OperatorPair& pair, Complex z, double tol = 1e-9);

/// Modified KoSSF for the resolvent change of variables u = lambda + E, mu = 1/u.
///
/// Each piece is c0 + c1 u + c2 u^2 on (breakpoints[k], breakpoints[k+1]) in
/// lambda; the quadratic terms cancel, so c2 is always 0. The function is 0
/// below the first breakpoint and equals `tail` above the last one.
struct ModifiedKoSSF {
  double shift = 0.0;
  std::vector<double> breakpoints;
  std::vector<std::array<double, 3>> pieces;
  double tail = 0.0;

  double operator()(double lambda) const;
  /// The finite part as a piecewise affine function of lambda.
  PiecewiseFunction finite_part() const;
  /// int eta~ f'' for f in C_0^infty agreeing with `fn` near the spectrum:
  /// the finite part plus the tail contribution -tail * f'(last breakpoint).
  double pair_with(const ScalarFunction& fn) const;
};

/// Throws InvalidInput naming the offending eigenvalue unless A + E and B + E
/// are positive definite.
ModifiedKoSSF modified_kossf(const HermitianOperator& a, const HermitianOperator& b, double shift);

/// Tr(f(A) - f(B)) - Tr(x g'(b)) against the pairing of eta~ with f'', where
/// b = (B + E)^{-1}, x = (A + E)^{-1} - b, g(mu) = f(1/mu - E).
VerificationReport modified_trace_check(const HermitianOperator& a, const HermitianOperator& b, double shift,
                                        const ScalarFunction& fn, double tol = 1e-7);

struct ApproximationResult {
  std::vector<Eigen::Index> sizes;
  std::vector<double> eta_errors;  // max over test polynomials g of |int g eta_N - int g eta|
  std::vector<double> xi_errors;
  bool trend_decreasing = false;   // error at the last proper size <= error at the first
  VerificationReport final_report; // error at N = n
};

/// Compresses A and B to the leading N x N blocks for each requested size and
/// compares test-polynomial moments of eta and xi with those of the full pair.
ApproximationResult approximation_convergence_check(const OperatorPair& pair, const std::vector<Eigen::Index>& sizes,
                                                    const std::vector<Polynomial>& tests, double tol = 1e-10);

}  // namespace ssflab
