#pragma once

#include <optional>
#include <vector>

#include "ssflab/types.hpp"

namespace ssflab {

/// Relative merge tolerance for eigenvalue clustering.
inline constexpr double kMergeTolerance = 1e-12;

/// A self-adjoint matrix together with its ascending eigendecomposition,
/// computed once at construction.
///
/// Diagonal operators built with `diagonal()` keep only their diagonal; the
/// dense form and the eigenvector matrix are produced on request. This keeps
/// the block pairs produced by the realization module (thousands of 2x2
/// blocks) cheap.
class HermitianOperator {
 public:
  /// Validates Hermiticity: max |m_jk - conj(m_kj)| <= 1e-12 (1 + max |m|).
  /// Throws InvalidInput naming the offending entry otherwise.
  explicit HermitianOperator(const ComplexMatrix& m);

  static HermitianOperator diagonal(const std::vector<double>& d);
  static HermitianOperator diagonal(const RealVector& d);

  Eigen::Index dim() const { return dim_; }
  bool is_diagonal() const { return diag_.has_value(); }

  /// Dense entries. Materialized on each call for diagonal operators.
  ComplexMatrix matrix() const;
  /// Diagonal entries in storage order (only for diagonal operators).
  const RealVector& diagonal_entries() const;

  /// Ascending eigenvalues.
  const RealVector& eigenvalues() const { return eigenvalues_; }
  /// Orthonormal eigenvectors as columns, matching eigenvalues().
  ComplexMatrix eigenvectors() const;

  double spectral_radius() const;
  double min_eigenvalue() const { return eigenvalues_(0); }
  double max_eigenvalue() const { return eigenvalues_(dim_ - 1); }

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator-(const HermitianOperator& other) const;
  HermitianOperator scaled(double s) const;
  HermitianOperator shifted(double s) const;

  /// Compression onto the first `n` coordinates.
  HermitianOperator leading_block(Eigen::Index n) const;

 private:
  HermitianOperator() = default;

  Eigen::Index dim_ = 0;
  std::optional<RealVector> diag_;
  ComplexMatrix dense_;
  RealVector eigenvalues_;
  ComplexMatrix eigenvectors_;
  std::vector<Eigen::Index> order_;  // diagonal case: eigenvalue k sits at index order_[k]
};

/// (A, B) on a common dimension with X = A - B and its Schatten data.
class OperatorPair {
 public:
  OperatorPair(HermitianOperator a, HermitianOperator b);

  const HermitianOperator& a() const { return a_; }
  const HermitianOperator& b() const { return b_; }
  Eigen::Index dim() const { return a_.dim(); }
  bool is_diagonal() const { return a_.is_diagonal() && b_.is_diagonal(); }

  /// X = A - B.
  ComplexMatrix perturbation() const;
  /// Diagonal of X in storage order (diagonal pairs only).
  RealVector perturbation_diagonal() const;

  double trace_perturbation() const { return trace_x_; }
  double trace_norm() const { return trace_norm_; }
  double hilbert_schmidt_norm() const { return hs_norm_; }
  int perturbation_rank() const { return rank_; }
  /// Singular values of X, descending.
  const RealVector& singular_values() const { return singular_values_; }

  /// Smallest and largest point of sigma(A) u sigma(B).
  double spectral_lower() const;
  double spectral_upper() const;
  /// max(1, |spectral_lower|, |spectral_upper|); used to scale tolerances.
  double scale() const;

 private:
  HermitianOperator a_;
  HermitianOperator b_;
  RealVector singular_values_;
  double trace_x_ = 0.0;
  double trace_norm_ = 0.0;
  double hs_norm_ = 0.0;
  int rank_ = 0;
};

/// A run of nearly equal sorted values merged into one point.
struct Cluster {
  double value;                       // the middle member
  std::vector<Eigen::Index> members;  // indices into the input
};

/// Single-linkage clustering of an ascending sequence: neighbours closer than
/// kMergeTolerance * (1 + max |v|) share a cluster.
std::vector<Cluster> cluster_sorted(const std::vector<double>& sorted);

/// Sorted, merged union of several spectra. Used as breakpoints.
std::vector<double> merged_breakpoints(std::initializer_list<const RealVector*> spectra);

/// Number of entries of the ascending vector `sorted` strictly below x.
Eigen::Index count_below(const RealVector& sorted, double x);

}  // namespace ssflab
