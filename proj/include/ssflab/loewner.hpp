#pragma once

#include <vector>

#include "ssflab/functions.hpp"
#include "ssflab/hermitian.hpp"
#include "ssflab/report.hpp"

namespace ssflab {

/// L(k, l) = (f(y_k) - f(x_l)) / (y_k - x_l), or 0 when y_k and x_l merge.
/// x are the eigenvalues of A, y those of B (both ascending).
struct LoewnerMatrix {
  RealMatrix l;
  RealVector x;
  RealVector y;
};

LoewnerMatrix loewner_matrix(const HermitianOperator& a, const HermitianOperator& b, const ScalarFunction& fn);

/// Psi^* (f(B) - f(A)) Phi against L o (Psi^* (B - A) Phi) entrywise, Phi and Psi
/// the eigenvector matrices of A and B. The residual is relative to max(1, max entry).
VerificationReport loewner_formula_check(const HermitianOperator& a, const HermitianOperator& b,
                                         const ScalarFunction& fn, double tol = 1e-10);

/// (1 + 1e-6) max |f'| over `grid` equally spaced points of [lo, hi].
double grid_lipschitz_constant(const ScalarFunction& fn, double lo, double hi, int grid = 10000);

/// |f(A) - f(B)|_2 <= L |A - B|_2 with the grid Lipschitz constant on the joint spectral interval.
VerificationReport bs_bound_check(const OperatorPair& pair, const ScalarFunction& fn, int grid = 10000);

/// i int_0^t e^{isB} X e^{i(t-s)B} ds by Gauss-Legendre, doubling the order from
/// `nodes` until successive results agree within 1e-9. Throws InvalidInput for nodes < 16.
ComplexMatrix duhamel_derivative(const HermitianOperator& b, const ComplexMatrix& x, double t, int nodes = 16);

/// |e^{itA} - e^{itB} - D|_1 <= t^2/2 |X|_2^2 + budget and |e^{itA} - e^{itB}|_1 <= |t| |X|_1 + budget.
std::vector<VerificationReport> taylor_remainder_check(const OperatorPair& pair, double t, double budget = 1e-8);

struct ConvexityResult {
  std::vector<VerificationReport> reports;
  double formula_second_derivative = 0.0;
  double fd_second_derivative = 0.0;
};

/// Midpoint convexity of t -> Tr f(A + tX) on t = 0, 0.1, ..., 1, the tangent gap
/// Tr(f(A+X) - f(A) - X f'(A)) >= 0, and the eigenvalue second-derivative formula
/// against a Richardson-extrapolated central difference.
/// Throws InvalidInput when f'' < 0 somewhere on the relevant interval or when
/// A has an eigenvalue gap below 1e-6 * scale.
ConvexityResult convexity_suite(const ScalarFunction& fn, const HermitianOperator& a, const ComplexMatrix& x,
                                double tol = 1e-10, double fd_tol = 1e-6);

}  // namespace ssflab
