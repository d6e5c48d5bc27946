#include "ssflab/measure.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

namespace ssflab {

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  std::stable_sort(atoms_.begin(), atoms_.end(),
                   [](const Atom& l, const Atom& r) { return l.position < r.position; });
}

double AtomicMeasure::total() const {
  double s = 0.0;
  for (const Atom& a : atoms_) s += a.weight;
  return s;
}

double AtomicMeasure::integrate(const std::function<double(double)>& f) const {
  double s = 0.0;
  for (const Atom& a : atoms_) s += f(a.position) * a.weight;
  return s;
}

double AtomicMeasure::mass_below(double x) const {
  double s = 0.0;
  for (const Atom& a : atoms_) {
    if (a.position >= x) break;
    s += a.weight;
  }
  return s;
}

namespace {

std::vector<double> to_std(const RealVector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

AtomicMeasure coupling_measure(const HermitianOperator& b, const ComplexMatrix& x) {
  if (x.rows() != b.dim() || x.cols() != b.dim()) {
    throw InvalidInput("coupling measure: dimension mismatch");
  }
  if (b.is_diagonal()) {
    const RealVector xd = x.diagonal().real();
    return coupling_measure(b, xd);
  }
  const ComplexMatrix u = b.eigenvectors();
  // Diagonal of U* X U: the weight of each eigenvector.
  const RealVector w = (u.adjoint() * x * u).diagonal().real();
  std::vector<Atom> atoms;
  for (const Cluster& c : cluster_sorted(to_std(b.eigenvalues()))) {
    double weight = 0.0;
    for (Eigen::Index j : c.members) weight += w(j);
    atoms.push_back({c.value, weight});
  }
  return AtomicMeasure(std::move(atoms));
}

AtomicMeasure coupling_measure(const HermitianOperator& b, const RealVector& x_diagonal) {
  if (!b.is_diagonal()) return coupling_measure(b, ComplexMatrix(x_diagonal.cast<Complex>().asDiagonal()));
  if (x_diagonal.size() != b.dim()) throw InvalidInput("coupling measure: dimension mismatch");
  const RealVector& d = b.diagonal_entries();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(d.size()));
  for (Eigen::Index i = 0; i < d.size(); ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [&d](Eigen::Index i, Eigen::Index j) { return d(i) < d(j); });
  std::vector<double> sorted;
  sorted.reserve(order.size());
  for (Eigen::Index i : order) sorted.push_back(d(i));
  std::vector<Atom> atoms;
  for (const Cluster& c : cluster_sorted(sorted)) {
    double weight = 0.0;
    for (Eigen::Index k : c.members) weight += x_diagonal(order[static_cast<std::size_t>(k)]);
    atoms.push_back({c.value, weight});
  }
  return AtomicMeasure(std::move(atoms));
}

AtomicMeasure coupling_measure(const OperatorPair& pair) {
  if (pair.is_diagonal()) return coupling_measure(pair.b(), pair.perturbation_diagonal());
  return coupling_measure(pair.b(), pair.perturbation());
}

AtomicMeasure coupling_measure(const HermitianOperator& base, const OperatorPair& pair) {
  if (base.dim() != pair.dim()) throw InvalidInput("coupling measure: dimension mismatch");
  if (pair.is_diagonal() && base.is_diagonal()) return coupling_measure(base, pair.perturbation_diagonal());
  return coupling_measure(base, pair.perturbation());
}

double schatten_norm(const ComplexMatrix& m, double p) {
  if (!(p >= 1.0)) throw InvalidInput("schatten norm: p must be >= 1");
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const RealVector s = svd.singularValues();
  if (std::isinf(p)) return s.size() ? s(0) : 0.0;
  if (p == 1.0) return s.sum();
  if (p == 2.0) return s.norm();
  const double smax = s.size() ? s(0) : 0.0;
  if (smax == 0.0) return 0.0;
  // Scale to avoid overflow for large p.
  return smax * std::pow((s / smax).array().pow(p).sum(), 1.0 / p);
}

std::vector<CanonicalTerm> canonical_decomposition(const ComplexMatrix& x) {
  std::vector<CanonicalTerm> out;
  if (x.size() == 0) return out;
  Eigen::JacobiSVD<ComplexMatrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return out;
  const double cutoff = 1e-10 * s(0);
  for (Eigen::Index j = 0; j < s.size(); ++j) {
    if (s(j) <= cutoff) break;
    out.push_back({s(j), svd.matrixV().col(j), svd.matrixU().col(j)});
  }
  return out;
}

}  // namespace ssflab
