#include "ssflab/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <thread>

#include "ssflab/koplienko.hpp"
#include "ssflab/krein.hpp"
#include "ssflab/loewner.hpp"
#include "ssflab/measure.hpp"
#include "ssflab/random.hpp"
#include "ssflab/unitary.hpp"

namespace ssflab {

namespace {

const std::map<std::string, double>& tolerance_table() {
  static const std::map<std::string, double> table{
      {"trace", 1e-8},      {"mass", 1e-10},   {"positivity", 1e-10}, {"chain", 1e-10},
      {"bs", 0.0},          {"det2", 1e-9},    {"taylor", 1e-8},      {"convexity", 1e-10},
      {"stability", 1e-10}, {"invariance", 1e-12}, {"unitary", 1e-10},
  };
  return table;
}

constexpr Eigen::Index kPairDim = 8;
constexpr Eigen::Index kTripleDim = 6;

const Complex kProbes[] = {{0.3, 1.0}, {-1.2, 0.5}, {2.0, -0.7}, {0.0, 0.25}, {-0.4, -2.0}};

std::vector<VerificationReport> xi_property_reports(const OperatorPair& pair) {
  const PiecewiseFunction xi = krein_ssf(pair);
  std::vector<VerificationReport> out;
  VerificationReport integer = absolute_report("xi is integer valued", "krein-integer", 0.0, 0.0, 0.0);
  integer.passed = xi.is_integer_valued();
  if (!integer.passed) integer.note = "non-integer piece";
  out.push_back(integer);
  out.push_back(upper_bound_report("|xi| <= rank X", "krein-rank-bound", xi.max_abs_value(),
                                   static_cast<double>(pair.perturbation_rank()), 0.0));
  out.push_back(upper_bound_report("int |xi| <= |X|_1", "krein-trace-norm-bound", xi.l1_norm(), pair.trace_norm(),
                                   1e-10 * std::max(1.0, pair.trace_norm())));
  out.push_back(identity_report("int xi = Tr X", "krein-mass", xi.integral(), pair.trace_perturbation(), 1e-10,
                                std::max(1.0, pair.trace_norm())));
  return out;
}

std::vector<VerificationReport> trace_case(SeededRng& rng, int case_id, double tol) {
  const OperatorPair pair = random_pair(rng, kPairDim);
  const Polynomial p = random_polynomial(rng, case_id % 7);
  std::vector<VerificationReport> out = xi_property_reports(pair);
  out.push_back(krein_trace_check(pair, p, tol));
  out.push_back(ko_trace_check(pair, p, tol));
  return out;
}

std::vector<VerificationReport> mass_case(SeededRng& rng, double tol) {
  const OperatorPair pair = random_pair(rng, kPairDim);
  const double hs = pair.hilbert_schmidt_norm();
  return {identity_report("int eta = |X|_2^2 / 2", "koplienko-mass", koplienko_ssf(pair).integral(), 0.5 * hs * hs,
                          tol)};
}

std::vector<VerificationReport> positivity_case(SeededRng& rng, double tol) {
  const OperatorPair pair = random_pair(rng, kPairDim);
  return {lower_bound_report("eta >= 0", "koplienko-positivity", koplienko_ssf(pair).min_value(), 0.0,
                             tol * pair.scale())};
}

std::vector<VerificationReport> chain_case(SeededRng& rng, int case_id, double tol) {
  const HermitianOperator a = random_hermitian(rng, kTripleDim, 2.0);
  const HermitianOperator b = random_hermitian(rng, kTripleDim, 2.0);
  const HermitianOperator c = random_hermitian(rng, kTripleDim, 2.0);
  const Polynomial g = random_polynomial(rng, 1 + case_id % 5);
  std::vector<VerificationReport> out;
  out.push_back(delta_eta_identity_check(a, b, c, g, tol));
  out.push_back(chain_rule_check(a, b, c, tol));
  const double xi_gap = max_midpoint_difference(krein_ssf(OperatorPair(a, c)),
                                                krein_ssf(OperatorPair(a, b)) + krein_ssf(OperatorPair(b, c)));
  out.push_back(absolute_report("xi(A,C) = xi(A,B) + xi(B,C)", "krein-chain-rule", xi_gap, 0.0, 0.0));
  return out;
}

ScalarFunction bs_smooth_function(SeededRng& rng, int case_id) {
  switch (case_id % 3) {
    case 0: {
      const double w = rng.uniform(0.5, 2.0);
      return ScalarFunction("sin", [w](double x) { return std::sin(w * x); },
                            [w](double x) { return w * std::cos(w * x); });
    }
    case 1:
      return ScalarFunction("atan", [](double x) { return std::atan(x); },
                            [](double x) { return 1.0 / (1.0 + x * x); });
    default:
      return ScalarFunction("gauss", [](double x) { return std::exp(-x * x); },
                            [](double x) { return -2.0 * x * std::exp(-x * x); });
  }
}

std::vector<VerificationReport> bs_case(SeededRng& rng, int case_id, double tol) {
  const OperatorPair pair = random_pair(rng, kPairDim);
  const std::vector<ScalarFunction> fns{Polynomial::monomial(2), Polynomial::monomial(3),
                                        Polynomial({0.0, -1.0, 0.0, 0.0, 0.0, 1.0}), bs_smooth_function(rng, case_id)};
  std::vector<VerificationReport> out;
  for (const ScalarFunction& fn : fns) {
    out.push_back(loewner_formula_check(pair.a(), pair.b(), fn, 1e-10));
    VerificationReport bound = bs_bound_check(pair, fn);
    if (tol > 0.0) {
      bound.tolerance = tol;
      bound.passed = bound.lhs.real() <= bound.rhs.real() + tol;
    }
    out.push_back(bound);
  }
  return out;
}

std::vector<VerificationReport> det2_case(SeededRng& rng, double tol) {
  const OperatorPair pair = random_pair(rng, kPairDim);
  const PiecewiseFunction xi = krein_ssf(pair);
  std::vector<VerificationReport> out;
  for (const Complex z : kProbes) {
    out.push_back(identity_report("det((A-z)(B-z)^-1) = exp(int xi/(l-z))", "perturbation-determinant",
                                  perturbation_determinant(pair, z), herglotz_exponential(xi, z), tol));
    out.push_back(det2_identity_check(pair, z, tol));
  }
  return out;
}

std::vector<VerificationReport> taylor_case(SeededRng& rng, double tol) {
  const OperatorPair pair = random_pair(rng, kTripleDim);
  std::vector<VerificationReport> out;
  for (double t : {0.5, 1.0, 2.0}) {
    for (VerificationReport& r : taylor_remainder_check(pair, t, tol)) out.push_back(std::move(r));
  }
  return out;
}

std::vector<VerificationReport> convexity_case(SeededRng& rng, double tol) {
  const Polynomial f = random_convex_polynomial(rng, 6);
  const HermitianOperator a = random_hermitian(rng, kTripleDim, 1.0);
  const ComplexMatrix x = random_hermitian_matrix(rng, kTripleDim, 0.5);
  return convexity_suite(f, a, x, tol).reports;
}

std::vector<VerificationReport> stability_case(SeededRng& rng, double tol) {
  const HermitianOperator a = random_hermitian(rng, kTripleDim, 2.0);
  const HermitianOperator b = random_hermitian(rng, kTripleDim, 2.0);
  const HermitianOperator c = random_hermitian(rng, kTripleDim, 2.0);
  return {stability_check(a, b, c, tol)};
}

std::vector<VerificationReport> invariance_case(SeededRng& rng, int case_id, double tol) {
  const OperatorPair pair = random_pair(rng, kPairDim);
  // phi' = (1 + u) + 3 c x^2 > 0; odd cases use -phi.
  const double u = rng.uniform(0.0, 1.0), c = rng.uniform(0.1, 1.0), shift = rng.normal();
  Polynomial phi({shift, 1.0 + u, 0.0, c});
  if (case_id % 2 == 1) phi = phi * -1.0;
  return {xi_invariance_check(pair, phi, tol)};
}

std::vector<VerificationReport> unitary_case(SeededRng& rng, int case_id, double tol) {
  const ComplexMatrix b = random_unitary(rng, kTripleDim, 2.0);
  const ComplexMatrix a = random_unitary(rng, kTripleDim, 0.5) * b;
  std::vector<Complex> p(static_cast<std::size_t>(case_id % 9) + 1);
  for (Complex& c : p) c = Complex(rng.normal(), rng.normal());
  std::vector<VerificationReport> out;
  out.push_back(cyclicity_gate(a, b));
  out.push_back(moment_bound_check(unitary_moments(a, b, 64)));
  out.push_back(unitary_trace_check(a, b, p, tol));
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"trace",     "mass",      "positivity", "chain",
                                              "bs",        "det2",      "taylor",     "convexity",
                                              "stability", "invariance", "unitary"};
  return names;
}

double default_tolerance(const std::string& suite) {
  const auto it = tolerance_table().find(suite);
  if (it == tolerance_table().end()) throw InvalidInput("unknown suite '" + suite + "'");
  return it->second;
}

std::vector<VerificationReport> run_suite_case(const std::string& suite, std::uint64_t seed, int case_id,
                                               std::optional<double> tol) {
  const double t = tol.value_or(default_tolerance(suite));
  SeededRng rng(seed, static_cast<std::uint64_t>(case_id));
  if (suite == "trace") return trace_case(rng, case_id, t);
  if (suite == "mass") return mass_case(rng, t);
  if (suite == "positivity") return positivity_case(rng, t);
  if (suite == "chain") return chain_case(rng, case_id, t);
  if (suite == "bs") return bs_case(rng, case_id, t);
  if (suite == "det2") return det2_case(rng, t);
  if (suite == "taylor") return taylor_case(rng, t);
  if (suite == "convexity") return convexity_case(rng, t);
  if (suite == "stability") return stability_case(rng, t);
  if (suite == "invariance") return invariance_case(rng, case_id, t);
  if (suite == "unitary") return unitary_case(rng, case_id, t);
  throw InvalidInput("unknown suite '" + suite + "'");
}

unsigned thread_limit() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SSF_LAB_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

std::vector<SuiteCase> run_suite(const std::string& suite, std::uint64_t seed, int count, std::optional<double> tol,
                                 unsigned threads) {
  default_tolerance(suite);  // validates the name before any worker starts
  if (count < 0) throw InvalidInput("case count must be nonnegative");
  std::vector<SuiteCase> out(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  const auto worker = [&] {
    for (int id = next++; id < count; id = next++) {
      SuiteCase& slot = out[static_cast<std::size_t>(id)];
      slot.case_id = id;
      try {
        slot.reports = run_suite_case(suite, seed, id, tol);
      } catch (const std::exception& e) {
        slot.error = e.what();
      }
    }
  };
  const unsigned n = std::max(1u, std::min(threads, static_cast<unsigned>(std::max(count, 1))));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();
  return out;
}

}  // namespace ssflab
