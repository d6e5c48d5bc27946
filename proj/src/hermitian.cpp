#include "ssflab/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace ssflab {

namespace {

void check_hermitian(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw InvalidInput("Hermitian operator: matrix must be square and nonempty");
  }
  if (!m.allFinite()) {
    throw InvalidInput("Hermitian operator: non-finite entry");
  }
  const double bound = 1e-12 * (1.0 + m.cwiseAbs().maxCoeff());
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    for (Eigen::Index k = j; k < m.cols(); ++k) {
      if (std::abs(m(j, k) - std::conj(m(k, j))) > bound) {
        std::ostringstream os;
        os << "Hermitian operator: entry (" << j << ',' << k
           << ") does not match the conjugate of entry (" << k << ',' << j << ')';
        throw InvalidInput(os.str());
      }
    }
  }
}

}  // namespace

HermitianOperator::HermitianOperator(const ComplexMatrix& m) {
  check_hermitian(m);
  dim_ = m.rows();
  dense_ = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(dense_);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("Hermitian operator: eigensolver did not converge");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

HermitianOperator HermitianOperator::diagonal(const std::vector<double>& d) {
  return diagonal(RealVector(Eigen::Map<const RealVector>(d.data(), static_cast<Eigen::Index>(d.size()))));
}

HermitianOperator HermitianOperator::diagonal(const RealVector& d) {
  if (d.size() == 0) throw InvalidInput("Hermitian operator: empty diagonal");
  if (!d.allFinite()) throw InvalidInput("Hermitian operator: non-finite diagonal entry");
  HermitianOperator h;
  h.dim_ = d.size();
  h.diag_ = d;
  h.order_.resize(static_cast<std::size_t>(d.size()));
  std::iota(h.order_.begin(), h.order_.end(), Eigen::Index{0});
  std::stable_sort(h.order_.begin(), h.order_.end(),
                   [&d](Eigen::Index i, Eigen::Index j) { return d(i) < d(j); });
  h.eigenvalues_.resize(d.size());
  for (Eigen::Index k = 0; k < d.size(); ++k) h.eigenvalues_(k) = d(h.order_[static_cast<std::size_t>(k)]);
  return h;
}

ComplexMatrix HermitianOperator::matrix() const {
  if (diag_) return diag_->cast<Complex>().asDiagonal();
  return dense_;
}

const RealVector& HermitianOperator::diagonal_entries() const {
  if (!diag_) throw std::logic_error("diagonal_entries() on a dense operator");
  return *diag_;
}

ComplexMatrix HermitianOperator::eigenvectors() const {
  if (!diag_) return eigenvectors_;
  ComplexMatrix u = ComplexMatrix::Zero(dim_, dim_);
  for (Eigen::Index k = 0; k < dim_; ++k) u(order_[static_cast<std::size_t>(k)], k) = 1.0;
  return u;
}

double HermitianOperator::spectral_radius() const {
  return std::max(std::abs(min_eigenvalue()), std::abs(max_eigenvalue()));
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  if (dim_ != other.dim_) throw InvalidInput("Hermitian operator: dimension mismatch");
  if (diag_ && other.diag_) return diagonal(RealVector(*diag_ + *other.diag_));
  return HermitianOperator(matrix() + other.matrix());
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
  if (dim_ != other.dim_) throw InvalidInput("Hermitian operator: dimension mismatch");
  if (diag_ && other.diag_) return diagonal(RealVector(*diag_ - *other.diag_));
  return HermitianOperator(matrix() - other.matrix());
}

HermitianOperator HermitianOperator::scaled(double s) const {
  if (diag_) return diagonal(RealVector(s * *diag_));
  return HermitianOperator(ComplexMatrix(s * dense_));
}

HermitianOperator HermitianOperator::shifted(double s) const {
  if (diag_) return diagonal(RealVector(diag_->array() + s));
  ComplexMatrix m = dense_;
  m.diagonal().array() += s;
  return HermitianOperator(m);
}

HermitianOperator HermitianOperator::leading_block(Eigen::Index n) const {
  if (n <= 0 || n > dim_) throw InvalidInput("leading_block: size out of range");
  if (diag_) return diagonal(RealVector(diag_->head(n)));
  return HermitianOperator(ComplexMatrix(dense_.topLeftCorner(n, n)));
}

OperatorPair::OperatorPair(HermitianOperator a, HermitianOperator b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.dim() != b_.dim()) {
    std::ostringstream os;
    os << "operator pair: dimension mismatch (" << a_.dim() << " vs " << b_.dim() << ')';
    throw InvalidInput(os.str());
  }
  if (is_diagonal()) {
    RealVector x = perturbation_diagonal();
    trace_x_ = x.sum();
    singular_values_ = x.cwiseAbs();
    std::sort(singular_values_.data(), singular_values_.data() + singular_values_.size(),
              std::greater<>());
  } else {
    ComplexMatrix x = perturbation();
    trace_x_ = x.trace().real();
    // X is Hermitian, so its singular values are the moduli of its eigenvalues.
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(x, Eigen::EigenvaluesOnly);
    singular_values_ = solver.eigenvalues().cwiseAbs();
    std::sort(singular_values_.data(), singular_values_.data() + singular_values_.size(),
              std::greater<>());
  }
  trace_norm_ = singular_values_.sum();
  hs_norm_ = singular_values_.norm();
  const double cutoff = 1e-10 * (singular_values_.size() ? singular_values_(0) : 0.0);
  rank_ = static_cast<int>((singular_values_.array() > cutoff).count());
  if (singular_values_.size() && singular_values_(0) == 0.0) rank_ = 0;
}

ComplexMatrix OperatorPair::perturbation() const { return a_.matrix() - b_.matrix(); }

RealVector OperatorPair::perturbation_diagonal() const {
  return a_.diagonal_entries() - b_.diagonal_entries();
}

double OperatorPair::spectral_lower() const {
  return std::min(a_.min_eigenvalue(), b_.min_eigenvalue());
}

double OperatorPair::spectral_upper() const {
  return std::max(a_.max_eigenvalue(), b_.max_eigenvalue());
}

double OperatorPair::scale() const {
  return std::max({1.0, std::abs(spectral_lower()), std::abs(spectral_upper())});
}

std::vector<Cluster> cluster_sorted(const std::vector<double>& sorted) {
  std::vector<Cluster> out;
  if (sorted.empty()) return out;
  double radius = 0.0;
  for (double v : sorted) radius = std::max(radius, std::abs(v));
  const double tol = kMergeTolerance * (1.0 + radius);
  // The middle member represents the cluster, so exactly repeated values stay exact.
  auto close = [&](Cluster& c) {
    c.value = sorted[static_cast<std::size_t>(c.members[c.members.size() / 2])];
    out.push_back(std::move(c));
  };
  Cluster current{sorted[0], {0}};
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] - sorted[i - 1] <= tol) {
      current.members.push_back(static_cast<Eigen::Index>(i));
    } else {
      close(current);
      current = Cluster{sorted[i], {static_cast<Eigen::Index>(i)}};
    }
  }
  close(current);
  return out;
}

std::vector<double> merged_breakpoints(std::initializer_list<const RealVector*> spectra) {
  std::vector<double> all;
  for (const RealVector* s : spectra) all.insert(all.end(), s->data(), s->data() + s->size());
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (const Cluster& c : cluster_sorted(all)) out.push_back(c.value);
  return out;
}

Eigen::Index count_below(const RealVector& sorted, double x) {
  const double* begin = sorted.data();
  return std::lower_bound(begin, begin + sorted.size(), x) - begin;
}

}  // namespace ssflab
