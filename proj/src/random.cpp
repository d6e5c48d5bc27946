#include "ssflab/random.hpp"

#include <cmath>

namespace ssflab {

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

double SeededRng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

int SeededRng::uniform_int(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(engine_);
}

ComplexMatrix random_hermitian_matrix(SeededRng& rng, Eigen::Index n, double scale) {
  ComplexMatrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) g(j, k) = Complex(rng.normal(), rng.normal());
  // Spectrum of (G + G*) / (2 sqrt(2n)) fills roughly [-1, 1].
  ComplexMatrix h = (g + g.adjoint()) * (scale / (2.0 * std::sqrt(2.0 * static_cast<double>(n))));
  return 0.5 * (h + h.adjoint());
}

HermitianOperator random_hermitian(SeededRng& rng, Eigen::Index n, double scale) {
  return HermitianOperator(random_hermitian_matrix(rng, n, scale));
}

ComplexVector random_unit_vector(SeededRng& rng, Eigen::Index n) {
  ComplexVector v(n);
  for (Eigen::Index j = 0; j < n; ++j) v(j) = Complex(rng.normal(), rng.normal());
  return v / v.norm();
}

ComplexMatrix random_low_rank_hermitian(SeededRng& rng, Eigen::Index n, int rank, double scale) {
  ComplexMatrix x = ComplexMatrix::Zero(n, n);
  for (int r = 0; r < rank; ++r) {
    const ComplexVector v = random_unit_vector(rng, n);
    const double s = scale * rng.uniform(-1.0, 1.0);
    x += s * v * v.adjoint();
  }
  return 0.5 * (x + x.adjoint());
}

OperatorPair random_pair(SeededRng& rng, Eigen::Index n, double perturbation_scale) {
  const ComplexMatrix b = random_hermitian_matrix(rng, n, 2.0);
  const ComplexMatrix x = random_hermitian_matrix(rng, n, perturbation_scale * 2.0);
  return OperatorPair(HermitianOperator(ComplexMatrix(b + x)), HermitianOperator(b));
}

OperatorPair random_decaying_pair(SeededRng& rng, Eigen::Index n) {
  ComplexMatrix b = ComplexMatrix::Zero(n, n), x = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    b(j, j) = rng.uniform(-1.0, 1.0);
    x(j, j) = std::ldexp(rng.normal(), -static_cast<int>(2 * j));
    for (Eigen::Index k = j + 1; k < n; ++k) {
      const double decay = std::ldexp(1.0, -static_cast<int>(j + k));
      b(j, k) = decay * Complex(rng.normal(), rng.normal());
      b(k, j) = std::conj(b(j, k));
      x(j, k) = decay * Complex(rng.normal(), rng.normal());
      x(k, j) = std::conj(x(j, k));
    }
  }
  return OperatorPair(HermitianOperator(ComplexMatrix(b + x)), HermitianOperator(b));
}

ComplexMatrix random_unitary(SeededRng& rng, Eigen::Index n, double scale) {
  const HermitianOperator h = random_hermitian(rng, n, scale);
  return apply_complex_function(h, [](double x) { return std::exp(Complex(0.0, x)); });
}

Polynomial random_polynomial(SeededRng& rng, int degree) {
  std::vector<double> c(static_cast<std::size_t>(degree) + 1);
  for (int k = 0; k <= degree; ++k) c[static_cast<std::size_t>(k)] = rng.normal() / (k + 1);
  if (c.back() == 0.0) c.back() = 1.0;
  return Polynomial(std::move(c));
}

Polynomial random_convex_polynomial(SeededRng& rng, int max_even_degree) {
  std::vector<double> c(static_cast<std::size_t>(max_even_degree) + 1, 0.0);
  c[0] = rng.normal();
  c[1] = rng.normal();
  for (int k = 2; k <= max_even_degree; k += 2) c[static_cast<std::size_t>(k)] = std::abs(rng.normal()) / k;
  return Polynomial(std::move(c));
}

}  // namespace ssflab
