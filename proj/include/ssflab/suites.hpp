#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ssflab/report.hpp"

namespace ssflab {

/// Names accepted by `verify --suite`.
const std::vector<std::string>& suite_names();

/// Default tolerance of a suite (what `--tol` overrides).
double default_tolerance(const std::string& suite);

/// Reports of one seeded case. Each case draws from its own engine seeded by
/// (seed, case_id), so a case is reproducible on its own and independent of
/// scheduling. Throws InvalidInput for unknown suites.
std::vector<VerificationReport> run_suite_case(const std::string& suite, std::uint64_t seed, int case_id,
                                               std::optional<double> tol = std::nullopt);

struct SuiteCase {
  int case_id = 0;
  std::vector<VerificationReport> reports;
  std::string error;  // set when the case threw
};

/// Runs cases 0..count-1 on up to `threads` workers; results are ordered by case id.
std::vector<SuiteCase> run_suite(const std::string& suite, std::uint64_t seed, int count, std::optional<double> tol,
                                 unsigned threads);

/// min(hardware concurrency, SSF_LAB_THREADS) with a floor of 1.
unsigned thread_limit();

}  // namespace ssflab
