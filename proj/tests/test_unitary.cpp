#include <doctest.h>

#include <cmath>

#include "ssflab/random.hpp"
#include "ssflab/unitary.hpp"

using namespace ssflab;

namespace {

ComplexMatrix scalar(Complex v) {
  ComplexMatrix m(1, 1);
  m(0, 0) = v;
  return m;
}

const Complex kI(0.0, 1.0);

}  // namespace

TEST_CASE("moments of A = i, B = 1") {
  const MomentSequence m = unitary_moments(scalar(kI), scalar(1.0), 8);
  CHECK(m.at(0) == 0.0);
  CHECK(m.at(1) == 0.0);
  CHECK(std::abs(m.at(2) - (-kI)) < 1e-14);
  CHECK(std::abs(m.at(3) - (1.0 - 2.0 * kI) / 3.0) < 1e-14);
  CHECK(std::abs(m.at(-3) - std::conj(m.at(3))) < 1e-15);
  // |i - 1|^2 / 2 = 1.
  CHECK(m.bound == doctest::Approx(1.0));
  CHECK(moment_bound_check(m).passed);
}

TEST_CASE("A = B gives vanishing moments") {
  SeededRng rng(181);
  const ComplexMatrix u = random_unitary(rng, 5, 1.0);
  const MomentSequence m = unitary_moments(u, u, 10);
  for (const Complex& c : m.c) CHECK(std::abs(c) < 1e-13);
}

TEST_CASE("unitary trace formula on polynomials") {
  const VerificationReport sq = unitary_trace_check(scalar(kI), scalar(1.0), {0.0, 0.0, 1.0});
  CHECK(std::abs(sq.lhs - (-2.0 * kI)) < 1e-14);
  CHECK(std::abs(sq.rhs - (-2.0 * kI)) < 1e-14);
  CHECK(sq.passed);
  for (const std::vector<Complex>& p : {std::vector<Complex>{1.0}, std::vector<Complex>{0.0, 1.0}}) {
    const VerificationReport r = unitary_trace_check(scalar(kI), scalar(1.0), p);
    CHECK(std::abs(r.lhs) < 1e-14);
    CHECK(std::abs(r.rhs) == 0.0);
  }

  SeededRng rng(191);
  const ComplexMatrix b = random_unitary(rng, 6, 2.0);
  const ComplexMatrix a = random_unitary(rng, 6, 0.5) * b;
  CHECK(cyclicity_gate(a, b).passed);
  for (int d = 0; d <= 8; ++d) {
    std::vector<Complex> p(static_cast<std::size_t>(d) + 1);
    for (Complex& c : p) c = Complex(rng.normal(), rng.normal());
    CHECK(unitary_trace_check(a, b, p).passed);
  }
  CHECK(moment_bound_check(unitary_moments(a, b, 64)).passed);
}

TEST_CASE("decay diagnostic and input validation") {
  SeededRng rng(201);
  const ComplexMatrix b = random_unitary(rng, 4, 2.0);
  const ComplexMatrix a = random_unitary(rng, 4, 0.3) * b;
  CHECK_THROWS_AS(moment_decay_diagnostic(a, b, 16), InvalidInput);
  const DecayDiagnostic d = moment_decay_diagnostic(a, b, 40);
  CHECK(d.magnitudes.size() == 41);
  CHECK(d.trace_bound_holds);
  CHECK(d.trend >= 0.0);

  ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
  bad(0, 1) = 0.1;
  CHECK_THROWS_AS(require_unitary(bad, "A"), InvalidInput);
  CHECK_THROWS_AS(unitary_moments(bad, ComplexMatrix::Identity(2, 2), 4), InvalidInput);
  CHECK_NOTHROW(require_unitary(b, "B"));
}
