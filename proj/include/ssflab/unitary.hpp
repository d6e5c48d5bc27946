#pragma once

#include <vector>

#include "ssflab/report.hpp"
#include "ssflab/types.hpp"

namespace ssflab {

/// c_n for n = 0..N with c_0 = c_1 = 0; c_{-n} = conj(c_n).
struct MomentSequence {
  int n_max = 0;
  std::vector<Complex> c;
  /// 1/2 |A - B|_2^2.
  double bound = 0.0;

  Complex at(int n) const;
};

/// Throws InvalidInput with the violation norm unless |M* M - I|_max <= 1e-10.
void require_unitary(const ComplexMatrix& m, const char* name);

/// c_n = (Tr(A^n - B^n) - n Tr(X B^{n-1})) / (n (n - 1)), X = A - B.
MomentSequence unitary_moments(const ComplexMatrix& a, const ComplexMatrix& b, int n_max);

/// sum_{j=0}^{n-1} Tr(B^j X B^{n-1-j}), the derivative of Tr (B + s X)^n at s = 0, summed literally.
Complex literal_derivative_trace(const ComplexMatrix& b, const ComplexMatrix& x, int n);

/// Closed-form moments against moments built from the literal derivative sum, n = 2..n_max.
VerificationReport cyclicity_gate(const ComplexMatrix& a, const ComplexMatrix& b, int n_max = 6, double tol = 1e-12);

/// For P(z) = sum p_n z^n: Tr(P(A) - P(B)) - d/ds Tr P(B + sX)|_0 (Horner with a derivative
/// recursion) against sum_n p_n n (n - 1) c_n.
VerificationReport unitary_trace_check(const ComplexMatrix& a, const ComplexMatrix& b, const std::vector<Complex>& p,
                                       double tol = 1e-10);

/// |c_n| <= 1/2 |X|_2^2 for n <= n_max.
VerificationReport moment_bound_check(const MomentSequence& moments, double tol = 1e-12);

struct DecayDiagnostic {
  std::vector<double> magnitudes;  // |c_n|, n = 0..N
  std::vector<double> trace_bound; // 2 |X|_1 / (n - 1) for n >= 2, 0 below
  double trend = 0.0;              // max_{n > N/2} |c_n| / max_{n <= N/2} |c_n| (0 if the latter vanishes)
  bool trace_bound_holds = true;
};

/// Non-binding diagnostic. Throws InvalidInput for N < 32.
DecayDiagnostic moment_decay_diagnostic(const ComplexMatrix& a, const ComplexMatrix& b, int n_max);

}  // namespace ssflab
