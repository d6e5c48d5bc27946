#pragma once

#include <cstdint>
#include <random>

#include "ssflab/functions.hpp"
#include "ssflab/hermitian.hpp"

namespace ssflab {

/// Seeded generators for the verification sweeps. Every sweep case derives its
/// own engine from (base seed, case id), so cases are independent of the order
/// in which they run.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
  SeededRng(std::uint64_t seed, std::uint64_t stream);

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// GUE-like Hermitian matrix with spectrum of order `scale`.
ComplexMatrix random_hermitian_matrix(SeededRng& rng, Eigen::Index n, double scale = 1.0);
HermitianOperator random_hermitian(SeededRng& rng, Eigen::Index n, double scale = 1.0);

/// Hermitian matrix of the given rank, norm of order `scale`.
ComplexMatrix random_low_rank_hermitian(SeededRng& rng, Eigen::Index n, int rank, double scale);

/// B random, A = B + X with X random of size `perturbation_scale`.
OperatorPair random_pair(SeededRng& rng, Eigen::Index n, double perturbation_scale = 0.5);

/// Pair whose leading compressions converge geometrically: B has diagonal in
/// [-1, 1] and couplings of size 2^-(j+k); X has entries of size 2^-(j+k).
OperatorPair random_decaying_pair(SeededRng& rng, Eigen::Index n);

/// Haar-like random unit vector.
ComplexVector random_unit_vector(SeededRng& rng, Eigen::Index n);

/// exp(i H) for a random Hermitian H.
ComplexMatrix random_unitary(SeededRng& rng, Eigen::Index n, double scale = 1.0);

/// Polynomial of exact degree with N(0,1)/(k+1) coefficients.
Polynomial random_polynomial(SeededRng& rng, int degree);

/// Convex polynomial: sum of even powers with nonnegative coefficients plus an affine term.
Polynomial random_convex_polynomial(SeededRng& rng, int max_even_degree);

}  // namespace ssflab
