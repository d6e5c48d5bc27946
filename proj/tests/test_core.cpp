#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ssflab/functions.hpp"
#include "ssflab/hermitian.hpp"
#include "ssflab/matrix_io.hpp"
#include "ssflab/measure.hpp"
#include "ssflab/piecewise.hpp"
#include "ssflab/quadrature.hpp"
#include "ssflab/random.hpp"
#include "ssflab/secular.hpp"

using namespace ssflab;

namespace {

ComplexMatrix dense(std::initializer_list<std::initializer_list<double>> rows) {
  ComplexMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

// Composite Simpson on a fine grid; independent of the library quadrature.
template <class F>
auto simpson(F f, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  auto s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * (h / 3.0);
}

}  // namespace

TEST_CASE("eigendecomposition of small hand matrices") {
  const HermitianOperator d(dense({{3, 0, 0}, {0, 1, 0}, {0, 0, 2}}));
  CHECK(d.eigenvalues()(0) == doctest::Approx(1.0));
  CHECK(d.eigenvalues()(1) == doctest::Approx(2.0));
  CHECK(d.eigenvalues()(2) == doctest::Approx(3.0));
  // The eigenvector of 1 is e_2 up to phase.
  CHECK(std::abs(d.eigenvectors()(1, 0)) == doctest::Approx(1.0));

  const HermitianOperator s(dense({{0, 1}, {1, 0}}));
  CHECK(s.eigenvalues()(0) == doctest::Approx(-1.0));
  CHECK(s.eigenvalues()(1) == doctest::Approx(1.0));
}

TEST_CASE("seeded 8x8 eigenpairs have small residuals") {
  SeededRng rng(7);
  const HermitianOperator h = random_hermitian(rng, 8);
  const ComplexMatrix m = h.matrix();
  for (Eigen::Index k = 0; k < 8; ++k) {
    const ComplexVector v = h.eigenvectors().col(k);
    CHECK((m * v - h.eigenvalues()(k) * v).norm() <= 1e-10);
  }
}

TEST_CASE("non-Hermitian input is rejected") {
  CHECK_THROWS_AS(HermitianOperator(dense({{0, 1}, {2, 0}})), InvalidInput);
}

TEST_CASE("apply_function against direct matrix products") {
  const HermitianOperator d = HermitianOperator::diagonal(std::vector<double>{1.0, 2.0});
  const ComplexMatrix sq = apply_function(d, ScalarFunction(Polynomial::monomial(2))).matrix();
  CHECK(std::abs(sq(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(sq(1, 1) - 4.0) < 1e-14);

  SeededRng rng(11);
  const HermitianOperator h = random_hermitian(rng, 5);
  const ComplexMatrix m = h.matrix();
  const ComplexMatrix oracle = m * m * m - m;
  const ComplexMatrix got = apply_function(h, ScalarFunction(Polynomial({0.0, -1.0, 0.0, 1.0}))).matrix();
  CHECK((got - oracle).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((apply_function(h, ScalarFunction(Polynomial::monomial(1))).matrix() - m).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("domain errors name the eigenvalue") {
  const HermitianOperator d = HermitianOperator::diagonal(std::vector<double>{-1.0, 2.0});
  CHECK_THROWS_AS(apply_function(d, [](double x) { return std::log(x); }), DomainError);
}

TEST_CASE("Schatten norms") {
  const ComplexMatrix d = dense({{1, 0}, {0, -1}});
  CHECK(schatten_norm(d, 1.0) == doctest::Approx(2.0));
  CHECK(schatten_norm(d, 2.0) == doctest::Approx(std::sqrt(2.0)));
  SeededRng rng(3);
  const ComplexMatrix m = random_hermitian_matrix(rng, 6);
  CHECK(schatten_norm(m, 2.0) == doctest::Approx(std::sqrt((m.adjoint() * m).trace().real())).epsilon(1e-12));
  CHECK_THROWS_AS(schatten_norm(m, 0.5), InvalidInput);
}

TEST_CASE("coupling measure of the two-point block") {
  const HermitianOperator b = HermitianOperator::diagonal(std::vector<double>{-0.5, 0.5});
  const AtomicMeasure mu = coupling_measure(b, dense({{1, 0}, {0, -1}}));
  REQUIRE(mu.atoms().size() == 2);
  CHECK(mu.atoms()[0].position == -0.5);
  CHECK(mu.atoms()[0].weight == doctest::Approx(1.0));
  CHECK(mu.atoms()[1].weight == doctest::Approx(-1.0));
  CHECK(coupling_measure(b, ComplexMatrix(ComplexMatrix::Zero(2, 2))).total() == 0.0);
}

TEST_CASE("coupling weights on a degenerate eigenspace are basis independent") {
  SeededRng rng(5);
  // B = U diag(1, 1, 3, 4) U* with a random unitary mixing the double eigenvalue.
  ComplexMatrix u = ComplexMatrix::Identity(4, 4);
  u.topLeftCorner(2, 2) = random_unitary(rng, 2);
  const ComplexMatrix base = dense({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 3, 0}, {0, 0, 0, 4}});
  const HermitianOperator b(u * base * u.adjoint());
  const ComplexMatrix x = random_hermitian_matrix(rng, 4);
  const AtomicMeasure mu = coupling_measure(b, x);
  REQUIRE(mu.atoms().size() == 3);
  const ComplexMatrix p = u.leftCols(2) * u.leftCols(2).adjoint();
  CHECK(mu.atoms()[0].weight == doctest::Approx((p * x * p).trace().real()).epsilon(1e-12));
  // Tr(X g(B)) = int g dmu for a random polynomial.
  const Polynomial g = random_polynomial(rng, 4);
  const double lhs = (x * apply_function(b, ScalarFunction(g)).matrix()).trace().real();
  CHECK(mu.integrate([&g](double t) { return g(t); }) == doctest::Approx(lhs).epsilon(1e-10));
}

TEST_CASE("canonical decomposition reconstructs X") {
  CHECK(canonical_decomposition(ComplexMatrix::Zero(3, 3)).empty());
  const auto two = canonical_decomposition(dense({{1, 0}, {0, -1}}));
  REQUIRE(two.size() == 2);
  CHECK(two[0].singular_value == doctest::Approx(1.0));
  CHECK(two[1].singular_value == doctest::Approx(1.0));
  SeededRng rng(9);
  const ComplexMatrix x = random_hermitian_matrix(rng, 5);
  ComplexMatrix r = ComplexMatrix::Zero(5, 5);
  for (const CanonicalTerm& t : canonical_decomposition(x)) r += t.singular_value * t.psi * t.phi.adjoint();
  CHECK((r - x).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("piecewise function basics") {
  const PiecewiseFunction tent({-0.5, 0.0, 0.5}, {{1.0, 0.5}, {-1.0, 0.5}});
  CHECK(tent.integral() == doctest::Approx(0.25));
  CHECK(tent(-0.25) == doctest::Approx(0.25));
  CHECK(tent(2.0) == 0.0);
  CHECK(tent.max_abs_value() == doctest::Approx(0.5));
  // x on (-1, 1): l1 norm 1, integral 0.
  const PiecewiseFunction line({-1.0, 1.0}, {{1.0, 0.0}});
  CHECK(line.integral() == doctest::Approx(0.0));
  CHECK(line.l1_norm() == doctest::Approx(1.0));
  CHECK(line.min_value() == doctest::Approx(-1.0));
  CHECK(line.integrate_against(Polynomial::monomial(1)) == doctest::Approx(2.0 / 3.0));
  CHECK(tent.integrate_against([](double x) { return std::cos(x); }) ==
        doctest::Approx(simpson([&](double x) { return tent(x) * std::cos(x); }, -0.5, 0.5)).epsilon(1e-9));
  CHECK((tent - tent).l1_norm() == 0.0);
  CHECK((tent * 2.0).integral() == doctest::Approx(0.5));
  CHECK_THROWS_AS(PiecewiseFunction({0.0, 0.0}, {{0.0, 1.0}}), InvalidInput);
  CHECK_THROWS_AS(PiecewiseFunction({0.0, 1.0}, {}), InvalidInput);
}

TEST_CASE("Cauchy transforms against Simpson") {
  const PiecewiseFunction f({-1.0, 0.0, 2.0}, {{0.5, 1.0}, {-0.25, 1.0}});
  const Complex z(0.3, 0.8);
  const auto left = [](double t) { return 0.5 * t + 1.0; };
  const auto right = [](double t) { return -0.25 * t + 1.0; };
  const Complex c1 = simpson([&](double t) { return Complex(left(t)) / (t - z); }, -1.0, 0.0) +
                     simpson([&](double t) { return Complex(right(t)) / (t - z); }, 0.0, 2.0);
  const Complex c2 = simpson([&](double t) { return Complex(left(t)) / ((t - z) * (t - z)); }, -1.0, 0.0) +
                     simpson([&](double t) { return Complex(right(t)) / ((t - z) * (t - z)); }, 0.0, 2.0);
  CHECK(std::abs(f.cauchy_transform(z) - c1) < 1e-9);
  CHECK(std::abs(f.cauchy_transform_squared(z) - c2) < 1e-9);
}

TEST_CASE("Gauss-Legendre and adaptive quadrature") {
  // Degree 2n-1 exactness.
  CHECK(quadrature::integrate_fixed([](double x) { return std::pow(x, 9); }, 0.0, 1.0, 5) == doctest::Approx(0.1));
  const double sqrt_int = quadrature::integrate_adaptive_real([](double x) { return std::sqrt(x); }, 0.0, 1.0);
  CHECK(sqrt_int == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  // int_{-1}^{1} dt / (t - i) = Log((1 - i)/(-1 - i)) = i pi / 2.
  const auto r = quadrature::integrate_adaptive([](double t) { return 1.0 / Complex(t, -1.0); }, -1.0, 1.0);
  CHECK(r.converged);
  CHECK(std::abs(r.value - Complex(0.0, std::numbers::pi / 2.0)) < 1e-10);
}

TEST_CASE("secular solver against a dense eigensolver") {
  SeededRng rng(13);
  for (double alpha : {0.7, -1.3}) {
    std::vector<double> d{-1.0, -0.2, 0.0, 0.4, 0.4, 1.5};
    ComplexVector w(6);
    std::vector<double> weights;
    for (int k = 0; k < 6; ++k) {
      w(k) = rng.normal();
      weights.push_back(std::norm(w(k)));
    }
    ComplexMatrix m = ComplexMatrix::Zero(6, 6);
    for (int k = 0; k < 6; ++k) m(k, k) = d[static_cast<std::size_t>(k)];
    m += alpha * w * w.adjoint();
    const RealVector oracle = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(m).eigenvalues();
    const std::vector<double> got = rank_one_update_eigenvalues(d, weights, alpha);
    REQUIRE(got.size() == 6);
    for (int k = 0; k < 6; ++k) CHECK(got[static_cast<std::size_t>(k)] == doctest::Approx(oracle(k)).epsilon(1e-11));
  }
}

TEST_CASE("matrix documents report the JSON path of errors") {
  using nlohmann::json;
  const ComplexMatrix m = parse_matrix(json::parse(R"({"n":2,"entries":[[1,[0,1]],[[0,-1],2]]})"));
  CHECK(m(0, 1) == Complex(0.0, 1.0));
  CHECK(parse_hermitian(json::parse(R"({"diag":[3,1]})")).eigenvalues()(0) == 1.0);
  try {
    parse_matrix(json::parse(R"({"n":2,"entries":[[1,2],[3,"x"]]})"), "$.A");
    FAIL("expected InvalidInput");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).rfind("$.A.entries[1][1]", 0) == 0);
  }
  CHECK_THROWS_AS(parse_operator_document(json::parse(R"({"A":{"diag":[1]}})")), InvalidInput);
  CHECK_THROWS_AS(parse_operator_document(json::parse(R"({"A":{"diag":[1]},"B":{"diag":[1,2]}})")), InvalidInput);
  // Round trip.
  const OperatorPair pair(HermitianOperator(m), HermitianOperator::diagonal(std::vector<double>{0.0, 1.0}));
  const OperatorDocument back = parse_operator_document(pair_to_json(pair));
  CHECK((back.a.matrix() - m).norm() == 0.0);
}
