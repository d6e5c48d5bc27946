#include "ssflab/unitary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ssflab/measure.hpp"

namespace ssflab {

Complex MomentSequence::at(int n) const {
  if (std::abs(n) > n_max) throw InvalidInput("moment index out of range");
  return n >= 0 ? c[static_cast<std::size_t>(n)] : std::conj(c[static_cast<std::size_t>(-n)]);
}

void require_unitary(const ComplexMatrix& m, const char* name) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw InvalidInput(std::string(name) + ": matrix must be square and nonempty");
  }
  const double violation =
      (m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
  if (violation > 1e-10) {
    std::ostringstream os;
    os << name << ": not unitary (|M*M - I|_max = " << violation << ')';
    throw InvalidInput(os.str());
  }
}

namespace {

void check_pair(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_unitary(a, "A");
  require_unitary(b, "B");
  if (a.rows() != b.rows()) throw InvalidInput("unitary pair: dimension mismatch");
}

}  // namespace

MomentSequence unitary_moments(const ComplexMatrix& a, const ComplexMatrix& b, int n_max) {
  check_pair(a, b);
  if (n_max < 1) throw InvalidInput("unitary moments: N must be at least 1");
  const ComplexMatrix x = a - b;
  MomentSequence out;
  out.n_max = n_max;
  out.c.assign(static_cast<std::size_t>(n_max) + 1, Complex(0.0));
  out.bound = 0.5 * x.squaredNorm();
  ComplexMatrix a_pow = a;                                       // A^n
  ComplexMatrix b_pow = b;                                       // B^n
  ComplexMatrix b_prev = ComplexMatrix::Identity(a.rows(), a.cols());  // B^{n-1}
  for (int n = 2; n <= n_max; ++n) {
    a_pow = a_pow * a;
    b_prev = b_pow;
    b_pow = b_pow * b;
    const Complex numerator = (a_pow - b_pow).trace() - static_cast<double>(n) * (x * b_prev).trace();
    out.c[static_cast<std::size_t>(n)] = numerator / (static_cast<double>(n) * (n - 1));
  }
  return out;
}

Complex literal_derivative_trace(const ComplexMatrix& b, const ComplexMatrix& x, int n) {
  std::vector<ComplexMatrix> powers{ComplexMatrix::Identity(b.rows(), b.cols())};
  for (int j = 1; j < n; ++j) powers.push_back(powers.back() * b);
  Complex s = 0.0;
  for (int j = 0; j < n; ++j) {
    s += (powers[static_cast<std::size_t>(j)] * x * powers[static_cast<std::size_t>(n - 1 - j)]).trace();
  }
  return s;
}

VerificationReport cyclicity_gate(const ComplexMatrix& a, const ComplexMatrix& b, int n_max, double tol) {
  const MomentSequence m = unitary_moments(a, b, n_max);
  const ComplexMatrix x = a - b;
  double worst = 0.0;
  ComplexMatrix a_pow = a, b_pow = b;
  for (int n = 2; n <= n_max; ++n) {
    a_pow = a_pow * a;
    b_pow = b_pow * b;
    const Complex literal =
        ((a_pow - b_pow).trace() - literal_derivative_trace(b, x, n)) / (static_cast<double>(n) * (n - 1));
    worst = std::max(worst, std::abs(literal - m.at(n)));
  }
  return absolute_report("n Tr(X B^{n-1}) = sum_j Tr(B^j X B^{n-1-j})", "unitary-derivative-cyclicity", worst, 0.0,
                         tol);
}

VerificationReport unitary_trace_check(const ComplexMatrix& a, const ComplexMatrix& b, const std::vector<Complex>& p,
                                       double tol) {
  check_pair(a, b);
  const Eigen::Index n = a.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix x = a - b;
  Complex rhs = 0.0;
  if (!p.empty()) {
    const int degree = static_cast<int>(p.size()) - 1;
    // Horner for P(A), P(B) and the derivative of P(B + sX) at s = 0.
    ComplexMatrix va = p.back() * id, vb = p.back() * id, d = ComplexMatrix::Zero(n, n);
    for (int k = degree - 1; k >= 0; --k) {
      d = d * b + vb * x;
      vb = vb * b + p[static_cast<std::size_t>(k)] * id;
      va = va * a + p[static_cast<std::size_t>(k)] * id;
    }
    const Complex lhs = (va - vb).trace() - d.trace();
    if (degree >= 2) {
      const MomentSequence m = unitary_moments(a, b, degree);
      for (int k = 2; k <= degree; ++k) rhs += p[static_cast<std::size_t>(k)] * (k * (k - 1.0)) * m.at(k);
    }
    return identity_report("Tr(P(A)-P(B)-dP) = sum p_n n(n-1) c_n", "unitary-koplienko-trace", lhs, rhs, tol,
                           std::max(1.0, std::abs(lhs)));
  }
  return identity_report("Tr(P(A)-P(B)-dP) = sum p_n n(n-1) c_n", "unitary-koplienko-trace", 0.0, 0.0, tol, 1.0);
}

VerificationReport moment_bound_check(const MomentSequence& moments, double tol) {
  double worst = 0.0;
  for (const Complex& c : moments.c) worst = std::max(worst, std::abs(c));
  return upper_bound_report("|c_n| <= |X|_2^2 / 2", "unitary-moment-bound", worst, moments.bound, tol);
}

DecayDiagnostic moment_decay_diagnostic(const ComplexMatrix& a, const ComplexMatrix& b, int n_max) {
  if (n_max < 32) throw InvalidInput("moment decay diagnostic: N must be at least 32");
  const MomentSequence m = unitary_moments(a, b, n_max);
  const double trace_norm = schatten_norm(a - b, 1.0);
  DecayDiagnostic out;
  double early = 0.0, late = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    const double mag = std::abs(m.at(n));
    out.magnitudes.push_back(mag);
    const double bound = n >= 2 ? 2.0 * trace_norm / (n - 1) : 0.0;
    out.trace_bound.push_back(bound);
    if (n >= 2 && mag > bound * (1.0 + 1e-12) + 1e-14) out.trace_bound_holds = false;
    if (2 * n > n_max) {
      late = std::max(late, mag);
    } else {
      early = std::max(early, mag);
    }
  }
  out.trend = early > 0.0 ? late / early : 0.0;
  return out;
}

}  // namespace ssflab
