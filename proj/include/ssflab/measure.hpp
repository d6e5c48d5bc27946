#pragma once

#include <functional>
#include <vector>

#include "ssflab/hermitian.hpp"

namespace ssflab {

struct Atom {
  double position;
  double weight;
};

/// Finitely many real-weighted atoms with nondecreasing positions.
class AtomicMeasure {
 public:
  AtomicMeasure() = default;
  explicit AtomicMeasure(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  double total() const;
  /// sum_j f(position_j) weight_j
  double integrate(const std::function<double(double)>& f) const;
  /// mu((-inf, x)), strict inequality.
  double mass_below(double x) const;

 private:
  std::vector<Atom> atoms_;
};

/// The measure mu_{B,X} with Tr(X f(B)) = int f dmu_{B,X}: one atom per merged
/// eigenvalue of B, weighted by the trace of X compressed to that eigenspace.
AtomicMeasure coupling_measure(const HermitianOperator& b, const ComplexMatrix& x);
/// Diagonal B with diagonal X given in storage order.
AtomicMeasure coupling_measure(const HermitianOperator& b, const RealVector& x_diagonal);
/// mu_{B, A-B} for a pair.
AtomicMeasure coupling_measure(const OperatorPair& pair);
/// mu_{B, X} for an arbitrary Hermitian B and the X of `pair` (used for the
/// chain-rule defect, where the base operator differs from the pair's B).
AtomicMeasure coupling_measure(const HermitianOperator& base, const OperatorPair& pair);

/// (sum_j s_j^p)^{1/p} over singular values. Throws InvalidInput for p < 1.
double schatten_norm(const ComplexMatrix& m, double p);

struct CanonicalTerm {
  double singular_value;
  ComplexVector phi;  // right singular vector
  ComplexVector psi;  // left singular vector
};

/// X = sum_j s_j psi_j phi_j^*, keeping s_j > 1e-10 * s_max.
std::vector<CanonicalTerm> canonical_decomposition(const ComplexMatrix& x);

}  // namespace ssflab
