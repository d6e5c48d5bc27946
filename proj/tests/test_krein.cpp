#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ssflab/krein.hpp"
#include "ssflab/random.hpp"

using namespace ssflab;

namespace {

HermitianOperator diag(std::vector<double> d) { return HermitianOperator::diagonal(d); }

OperatorPair block_pair() { return OperatorPair(diag({0.5, -0.5}), diag({-0.5, 0.5})); }

// #{eigenvalues of B below x} - #{eigenvalues of A below x} from a fresh dense solve.
double counting_oracle(const ComplexMatrix& a, const ComplexMatrix& b, double x) {
  const RealVector ea = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(a).eigenvalues();
  const RealVector eb = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(b).eigenvalues();
  return static_cast<double>((eb.array() < x).count()) - static_cast<double>((ea.array() < x).count());
}

Complex det_oracle(const ComplexMatrix& a, const ComplexMatrix& b, Complex z) {
  const RealVector ea = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(a).eigenvalues();
  const RealVector eb = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(b).eigenvalues();
  Complex r = 1.0;
  for (Eigen::Index k = 0; k < ea.size(); ++k) r *= (ea(k) - z) / (eb(k) - z);
  return r;
}

}  // namespace

TEST_CASE("xi of hand pairs") {
  const PiecewiseFunction xi = krein_ssf(OperatorPair(diag({2.0}), diag({0.0})));
  REQUIRE(xi.segment_count() == 1);
  CHECK(xi.breakpoints()[0] == 0.0);
  CHECK(xi.breakpoints()[1] == 2.0);
  CHECK(xi.pieces()[0].intercept == 1.0);
  CHECK(xi.integral() == 2.0);

  CHECK(krein_ssf(OperatorPair(diag({1.0, 3.0}), diag({1.0, 3.0}))).max_abs_value() == 0.0);
  CHECK(krein_ssf(block_pair()).max_abs_value() == 0.0);
}

TEST_CASE("xi agrees with an independent counting oracle on seeded pairs") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    SeededRng rng(100 + s);
    const OperatorPair pair = random_pair(rng, 8);
    const PiecewiseFunction xi = krein_ssf(pair);
    CHECK(xi.is_integer_valued());
    for (std::size_t k = 0; k < xi.segment_count(); ++k) {
      const double m = 0.5 * (xi.breakpoints()[k] + xi.breakpoints()[k + 1]);
      CHECK(xi.midpoint_value(k) == counting_oracle(pair.a().matrix(), pair.b().matrix(), m));
    }
    CHECK(xi.integral() == doctest::Approx(pair.perturbation().trace().real()).epsilon(1e-10));
  }
}

TEST_CASE("Krein trace formula") {
  const OperatorPair pair(diag({2.0}), diag({0.0}));
  const VerificationReport sq = krein_trace_check(pair, Polynomial::monomial(2));
  CHECK(sq.passed);
  CHECK(sq.lhs.real() == doctest::Approx(4.0));
  CHECK(sq.rhs.real() == doctest::Approx(4.0));

  SeededRng rng(21);
  const OperatorPair p8 = random_pair(rng, 8);
  const VerificationReport lin = krein_trace_check(p8, Polynomial::monomial(1));
  CHECK(lin.lhs.real() == doctest::Approx(p8.perturbation().trace().real()));
  for (int d = 0; d <= 6; ++d) {
    const Polynomial f = random_polynomial(rng, d);
    // Brute-force eigen-sum oracle for the left side.
    const RealVector ea = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(p8.a().matrix()).eigenvalues();
    const RealVector eb = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(p8.b().matrix()).eigenvalues();
    double lhs = 0.0;
    for (Eigen::Index k = 0; k < 8; ++k) lhs += f(ea(k)) - f(eb(k));
    const VerificationReport r = krein_trace_check(p8, f);
    CHECK(r.passed);
    CHECK(r.lhs.real() == doctest::Approx(lhs).epsilon(1e-10));
  }
}

TEST_CASE("perturbation determinant and the Herglotz exponential") {
  const Complex i(0.0, 1.0);
  CHECK(std::abs(perturbation_determinant(OperatorPair(diag({1.0, 2.0}), diag({1.0, 2.0})), i) - 1.0) < 1e-14);
  CHECK(std::abs(perturbation_determinant(block_pair(), i) - 1.0) < 1e-14);
  CHECK(std::abs(herglotz_exponential(PiecewiseFunction(), i) - 1.0) < 1e-15);
  const PiecewiseFunction chi = PiecewiseFunction::step({0.0, 0.5}, {1.0});
  for (Complex z : {Complex(0.2, 1.0), Complex(-3.0, -0.1), Complex(0.25, 1e-3)}) {
    CHECK(std::abs(herglotz_exponential(chi, z) - (z - 0.5) / z) < 1e-12);
  }
  SeededRng rng(31);
  const OperatorPair pair = random_pair(rng, 8);
  const Complex z(0.3, 1.0);
  const Complex oracle = det_oracle(pair.a().matrix(), pair.b().matrix(), z);
  CHECK(std::abs(perturbation_determinant(pair, z) - oracle) <= 1e-10 * std::abs(oracle));
  CHECK(std::abs(herglotz_exponential(krein_ssf(pair), z) - oracle) <= 1e-10 * std::abs(oracle));
  CHECK_THROWS_AS(perturbation_determinant(pair, 0.5), InvalidInput);
}

TEST_CASE("resolvent trace identity") {
  const Complex i(0.0, 1.0);
  const VerificationReport r = resolvent_trace_check(OperatorPair(diag({2.0}), diag({0.0})), i);
  CHECK(r.passed);
  const Complex expected = 1.0 / (0.0 - i) - 1.0 / (2.0 - i);
  CHECK(std::abs(r.lhs - expected) < 1e-14);
  CHECK(std::abs(r.rhs - expected) < 1e-12);
  CHECK(resolvent_trace_check(OperatorPair(diag({1.0}), diag({1.0})), i).passed);
  SeededRng rng(41);
  CHECK(resolvent_trace_check(random_pair(rng, 6), Complex(1.0, 2.0)).passed);
}

TEST_CASE("rank-one xi by hand") {
  const Complex z(0.3, 0.7);
  ComplexVector e1 = ComplexVector::Zero(2);
  e1(0) = 1.0;
  const RankOneXi up = rank_one_xi({diag({0.0, 1.0}), e1, 0.5});
  CHECK(up.a_eigenvalues(0) == doctest::Approx(0.5));
  CHECK(up.a_eigenvalues(1) == doctest::Approx(1.0));
  CHECK(up.xi(0.25) == 1.0);
  CHECK(up.xi(0.75) == 0.0);
  CHECK(std::abs(up.g(z) - (z - 0.5) / z) < 1e-12);
  CHECK(up.sign_pattern_holds);

  const RankOneXi down = rank_one_xi({diag({0.0, 1.0}), e1, -0.5});
  CHECK(down.xi(-0.25) == -1.0);
  CHECK(down.xi(0.5) == 0.0);
  CHECK(down.sign_pattern_holds);

  const RankOneXi none = rank_one_xi({diag({0.0, 1.0}), e1, 0.0});
  CHECK(none.xi.max_abs_value() == 0.0);
  CHECK(std::abs(none.g(z) - 1.0) < 1e-15);

  CHECK_THROWS_AS(rank_one_xi({diag({0.0, 1.0}), 2.0 * e1, 0.5}), InvalidInput);
}

TEST_CASE("rank-one xi: secular and dense paths agree with counting and the argument") {
  SeededRng rng(51);
  const ComplexVector phi = random_unit_vector(rng, 7);
  for (double alpha : {0.8, -0.6}) {
    const HermitianOperator b = random_hermitian(rng, 7);
    const RankOneXi r = rank_one_xi({b, phi, alpha});
    const ComplexMatrix a = b.matrix() + alpha * phi * phi.adjoint();
    for (double m : r.xi.midpoints()) CHECK(r.xi(m) == counting_oracle(a, b.matrix(), m));
    CHECK(r.max_arg_discrepancy < 1e-6);
    CHECK(r.sign_pattern_holds);

    const HermitianOperator bd = HermitianOperator::diagonal(b.eigenvalues());
    const RankOneXi s = rank_one_xi({bd, phi, alpha});
    const ComplexMatrix ad = bd.matrix() + alpha * phi * phi.adjoint();
    for (double m : s.xi.midpoints()) CHECK(s.xi(m) == counting_oracle(ad, bd.matrix(), m));
  }
}

TEST_CASE("invariance principle") {
  const OperatorPair pair(diag({2.0}), diag({0.0}));
  CHECK(xi_invariance_check(pair, Polynomial({0.0, 1.0})).passed);
  CHECK(xi_invariance_check(pair, Polynomial({3.0, 2.0})).passed);
  SeededRng rng(61);
  const OperatorPair p = random_pair(rng, 6);
  CHECK(xi_invariance_check(p, Polynomial({0.0, -1.0})).passed);
  CHECK_THROWS_AS(xi_invariance_check(p, Polynomial::monomial(2)), InvalidInput);
}

TEST_CASE("xi realization of a step target") {
  const PiecewiseFunction g = PiecewiseFunction::step({0.0, 1.0}, {1.0});
  const XiRealization r = realize_xi(g);
  CHECK(r.alpha == doctest::Approx(1.0 / std::numbers::pi));
  for (const VerificationReport& rep : r.reports) CHECK_MESSAGE(rep.passed, rep.to_json().dump());
  // Closed-form moment oracle int_0^1 l^k / pi.
  for (int k = 0; k <= 4; ++k) {
    CHECK(std::abs(r.xi.integrate_against(Polynomial::monomial(k)) - 1.0 / ((k + 1) * std::numbers::pi)) <= 1e-2);
  }
  const XiRealization half = realize_xi(g * 0.5);
  CHECK(std::abs(half.xi.integral() - 0.5 / std::numbers::pi) <= 1e-3);
  CHECK_THROWS_AS(realize_xi(g * 2.0), InvalidInput);
}

TEST_CASE("determinant ratio identities") {
  const Complex i(0.0, 1.0);
  SeededRng rng(71);
  const HermitianOperator b = random_hermitian(rng, 4);
  ComplexVector e1 = ComplexVector::Zero(4);
  e1(0) = 1.0;
  // X = 0: the ratio collapses to det(I - P (B - i)^{-1}).
  const auto zero = determinant_ratio_identity(OperatorPair(b, b), e1, i);
  for (const auto& r : zero) CHECK(r.passed);

  // phi an eigenvector of B with eigenvalue beta.
  const ComplexVector v = b.eigenvectors().col(2);
  const double beta = b.eigenvalues()(2);
  const OperatorPair pair = random_pair(rng, 4);
  const auto eig = determinant_ratio_identity(OperatorPair(pair.a(), b), v, i);
  CHECK(std::abs(eig[0].lhs - (1.0 - 1.0 / (beta - i))) < 1e-12);

  const OperatorPair p6 = random_pair(rng, 6);
  const ComplexVector phi = random_unit_vector(rng, 6);
  const Complex z(0.5, 1.5);
  const auto reports = determinant_ratio_identity(p6, phi, z);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].passed);
  CHECK(reports[1].passed);

  // The factor with the opposite sign in the exponent does not reproduce the left side.
  const ComplexMatrix ra = (p6.a().matrix() - z * ComplexMatrix::Identity(6, 6)).inverse();
  const Complex q = phi.dot(ra * phi);
  const Complex plus = reports[1].rhs * std::exp(2.0 * q);
  CHECK(std::abs(plus - reports[1].lhs) > 1e-3 * std::abs(reports[1].lhs));
}
