#include <doctest.h>

#include <cmath>

#include "ssflab/koplienko.hpp"
#include "ssflab/krein.hpp"
#include "ssflab/random.hpp"

using namespace ssflab;

namespace {

HermitianOperator diag(std::vector<double> d) { return HermitianOperator::diagonal(d); }

const HermitianOperator kA = HermitianOperator::diagonal(std::vector<double>{0.5, -0.5});
const HermitianOperator kB = HermitianOperator::diagonal(std::vector<double>{-0.5, 0.5});
const HermitianOperator kZero = HermitianOperator::diagonal(std::vector<double>{0.0, 0.0});

// f(M) by Horner on matrices.
ComplexMatrix matrix_poly(const Polynomial& f, const ComplexMatrix& m) {
  const auto& c = f.coefficients();
  ComplexMatrix r = ComplexMatrix::Zero(m.rows(), m.cols());
  for (std::size_t k = c.size(); k-- > 0;) r = r * m + c[k] * ComplexMatrix::Identity(m.rows(), m.cols());
  return r;
}

// Tr f(A) - Tr f(B) - Tr(X f'(B)) straight from matrix polynomials.
double ko_lhs_oracle(const OperatorPair& p, const Polynomial& f) {
  const ComplexMatrix a = p.a().matrix(), b = p.b().matrix();
  return (matrix_poly(f, a) - matrix_poly(f, b) - (a - b) * matrix_poly(f.derivative(), b)).trace().real();
}

}  // namespace

TEST_CASE("the two-point block pair has eta = chi_(-1/2, 1/2) exactly") {
  const PiecewiseFunction eta = koplienko_ssf(OperatorPair(kA, kB));
  REQUIRE(eta.breakpoints() == std::vector<double>{-0.5, 0.5});
  REQUIRE(eta.segment_count() == 1);
  CHECK(eta.pieces()[0] == AffinePiece{0.0, 1.0});
  CHECK(eta.integral() == 1.0);
  CHECK(koplienko_ssf(OperatorPair(kA, kA)).max_abs_value() == 0.0);
}

TEST_CASE("eta of diag(1/2, -1/2) against zero is the tent") {
  const PiecewiseFunction eta = koplienko_ssf(OperatorPair(kA, kZero));
  CHECK(eta(-0.25) == doctest::Approx(0.25));
  CHECK(eta(0.25) == doctest::Approx(0.25));
  CHECK(eta(-0.1) == doctest::Approx(0.4));
  CHECK(eta.integral() == doctest::Approx(0.25));
  CHECK(eta.min_value() >= 0.0);
}

TEST_CASE("1x1 pairs: eta(l) = |l - a| between b and a") {
  for (auto [a, b] : {std::pair{1.0, 2.0}, std::pair{2.0, -1.0}, std::pair{-0.3, 0.4}}) {
    const PiecewiseFunction eta = koplienko_ssf(OperatorPair(diag({a}), diag({b})));
    const double lo = std::min(a, b), hi = std::max(a, b);
    for (double s : {0.1, 0.5, 0.9}) {
      const double l = lo + s * (hi - lo);
      CHECK(eta(l) == doctest::Approx(std::abs(l - a)));
    }
    CHECK(eta(hi + 1.0) == 0.0);
  }
}

TEST_CASE("Koplienko trace formula") {
  SeededRng rng(81);
  const OperatorPair pair = random_pair(rng, 8);
  // f = x^2 / 2: both sides are |X|_2^2 / 2 = int eta.
  const VerificationReport half = ko_trace_check(pair, Polynomial({0.0, 0.0, 0.5}));
  const double hs = pair.hilbert_schmidt_norm();
  CHECK(half.passed);
  CHECK(half.lhs.real() == doctest::Approx(0.5 * hs * hs));
  CHECK(half.rhs.real() == doctest::Approx(koplienko_ssf(pair).integral()));
  const VerificationReport affine = ko_trace_check(pair, Polynomial({2.0, -3.0}));
  CHECK(affine.passed);
  CHECK(std::abs(affine.rhs.real()) == 0.0);
  for (int d = 0; d <= 6; ++d) {
    const Polynomial f = random_polynomial(rng, d);
    const VerificationReport r = ko_trace_check(pair, f);
    CHECK(r.passed);
    CHECK(r.lhs.real() == doctest::Approx(ko_lhs_oracle(pair, f)).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("positivity and mass on seeded pairs") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    SeededRng rng(200 + s);
    const OperatorPair pair = random_pair(rng, 8);
    const PiecewiseFunction eta = koplienko_ssf(pair);
    CHECK(eta.min_value() >= -1e-10 * pair.scale());
    const double frob = pair.perturbation().norm();
    CHECK(eta.integral() == doctest::Approx(0.5 * frob * frob).epsilon(1e-10));
  }
}

TEST_CASE("chain-rule defect on the tent-versus-box triple") {
  const PiecewiseFunction d = delta_eta(kA, kB, kZero);
  REQUIRE(d.segment_count() >= 1);
  for (double m : d.midpoints()) CHECK(d(m) == (m > -0.5 && m < 0.5 ? -1.0 : 0.0));
  CHECK(d.integral() == -1.0);
  // tent = chi + tent - chi, segmentwise.
  CHECK(chain_rule_check(kA, kB, kZero).passed);
  CHECK(chain_rule_check(kA, kB, kZero).lhs == 0.0);
  CHECK(delta_eta(kA, kB, kB).max_abs_value() == 0.0);
}

TEST_CASE("defect identity with random polynomials before relying on it") {
  SeededRng rng(91);
  for (int k = 0; k < 20; ++k) {
    const HermitianOperator a = random_hermitian(rng, 6), b = random_hermitian(rng, 6), c = random_hermitian(rng, 6);
    const Polynomial g = random_polynomial(rng, 1 + k % 5);
    const VerificationReport r = delta_eta_identity_check(a, b, c, g);
    CHECK(r.passed);
    const ComplexMatrix x = a.matrix() - b.matrix();
    const double oracle = (x * (matrix_poly(g, b.matrix()) - matrix_poly(g, c.matrix()))).trace().real();
    CHECK(r.rhs.real() == doctest::Approx(oracle).epsilon(1e-10).scale(1.0));
    CHECK(chain_rule_check(a, b, c).passed);
  }
}

TEST_CASE("stability bound") {
  CHECK(stability_check(kA, kA, kZero).lhs == 0.0);
  // eta(A, 0) and eta(B, 0) are both the tent.
  const VerificationReport r = stability_check(kA, kB, kZero);
  CHECK(r.passed);
  CHECK(r.lhs.real() == doctest::Approx(0.0));
  CHECK(r.rhs.real() == doctest::Approx(2.0));
  // (A, 0, B): int |chi - tent| = 3/4 and the bound is 1/sqrt2 (1/(2 sqrt2) + 1/sqrt2) = 3/4.
  const VerificationReport edge = stability_check(kA, kZero, kB);
  CHECK(edge.lhs.real() == doctest::Approx(0.75));
  CHECK(edge.rhs.real() == doctest::Approx(0.75));
  CHECK(edge.passed);
}

TEST_CASE("det2 and its Koplienko representation") {
  const Complex i(0.0, 1.0);
  CHECK(std::abs(det2(OperatorPair(kA, kA), i) - 1.0) < 1e-14);
  const VerificationReport block = det2_identity_check(OperatorPair(kA, kB), i);
  CHECK(std::abs(block.lhs - std::exp(0.8)) < 1e-10);
  CHECK(std::abs(block.rhs - std::exp(0.8)) < 1e-10);
  CHECK(block.passed);

  SeededRng rng(101);
  const OperatorPair pair = random_pair(rng, 8);
  const Complex z(0.3, 1.0);
  const ComplexMatrix a = pair.a().matrix(), b = pair.b().matrix();
  const ComplexMatrix id = ComplexMatrix::Identity(8, 8);
  const Complex oracle = (a - z * id).determinant() / (b - z * id).determinant() *
                         std::exp(-((a - b) * (b - z * id).inverse()).trace());
  CHECK(std::abs(det2(pair, z) - oracle) <= 1e-10 * std::abs(oracle));
  CHECK(det2_identity_check(pair, z).passed);
  CHECK_THROWS_AS(det2(pair, 1.0), InvalidInput);
}

TEST_CASE("modified Koplienko function in one dimension") {
  // E = 0: a = 1, b = 1/2 after inversion.
  const HermitianOperator a = diag({1.0}), b = diag({2.0});
  const ModifiedKoSSF m = modified_kossf(a, b, 0.0);
  CHECK(m(0.5) == 0.0);
  CHECK(m(-3.0) == 0.0);
  // f = x^2: Tr(f(A) - f(B)) - x g'(b) with x = 1/2, g(mu) = mu^-2, g'(1/2) = -16, so 1 - 4 + 8 = 5.
  const VerificationReport r = modified_trace_check(a, b, 0.0, Polynomial::monomial(2));
  CHECK(r.lhs.real() == doctest::Approx(1.0 - 4.0 + 0.5 * 16.0));
  CHECK(r.passed);
  CHECK(modified_kossf(a, a, 0.0).tail == 0.0);
  CHECK_THROWS_AS(modified_kossf(diag({-1.0}), b, 0.5), InvalidInput);
}

TEST_CASE("modified trace formula on seeded positive-definite pairs") {
  SeededRng rng(111);
  for (int k = 0; k < 5; ++k) {
    const ComplexMatrix g = random_hermitian_matrix(rng, 6);
    const ComplexMatrix h = random_hermitian_matrix(rng, 6);
    const HermitianOperator a(ComplexMatrix(g * g.adjoint() + 0.1 * ComplexMatrix::Identity(6, 6)));
    const HermitianOperator b(ComplexMatrix(h * h.adjoint() + 0.1 * ComplexMatrix::Identity(6, 6)));
    const ModifiedKoSSF m = modified_kossf(a, b, 0.0);
    CHECK(m(m.breakpoints.front() - 1e-3) == 0.0);
    for (int d = 2; d <= 4; ++d) CHECK(modified_trace_check(a, b, 0.0, random_polynomial(rng, d)).passed);
  }
}

TEST_CASE("compression convergence") {
  const std::vector<Polynomial> tests{Polynomial::monomial(0), Polynomial::monomial(1), Polynomial::monomial(2),
                                      Polynomial::monomial(3)};
  const OperatorPair padded(diag({0.5, -0.5, 0.0, 0.0}), diag({-0.5, 0.5, 0.0, 0.0}));
  const ApproximationResult p = approximation_convergence_check(padded, {2, 4}, tests);
  CHECK(p.final_report.passed);
  CHECK(p.final_report.lhs == 0.0);
  CHECK(p.eta_errors[1] == 0.0);

  SeededRng rng(121);
  const OperatorPair pair = random_decaying_pair(rng, 12);
  const ApproximationResult r = approximation_convergence_check(pair, {4, 8, 12}, tests);
  CHECK(r.final_report.passed);
  CHECK(r.trend_decreasing);
  CHECK(r.eta_errors[1] <= r.eta_errors[0]);
  CHECK_THROWS_AS(approximation_convergence_check(pair, {8, 4}, tests), InvalidInput);
}
