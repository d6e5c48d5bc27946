#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ssflab/types.hpp"

namespace ssflab {

/// Outcome of one identity or bound check.
///
/// Identities compare lhs and rhs through `relative_error` (|lhs - rhs| divided
/// by a caller-supplied scale). Bounds pass when lhs <= rhs + tolerance
/// (UpperBound) or lhs >= rhs - tolerance (LowerBound); the slack is reported.
struct VerificationReport {
  enum class Kind { Identity, UpperBound, LowerBound };

  std::string identity;
  std::string anchor;
  Kind kind = Kind::Identity;
  Complex lhs;
  Complex rhs;
  double abs_error = 0.0;
  double rel_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string note;

  double slack() const;
  nlohmann::json to_json() const;
};

/// Identity check with |lhs - rhs| / scale <= tol. A non-positive scale means
/// max(|lhs|, |rhs|), falling back to the absolute error when both vanish.
VerificationReport identity_report(std::string identity, std::string anchor, Complex lhs,
                                   Complex rhs, double tol, double scale = 0.0);

/// Identity check on the absolute error only.
VerificationReport absolute_report(std::string identity, std::string anchor, Complex lhs,
                                   Complex rhs, double tol);

/// lhs <= rhs + tol.
VerificationReport upper_bound_report(std::string identity, std::string anchor, double lhs,
                                      double rhs, double tol);

/// lhs >= rhs - tol.
VerificationReport lower_bound_report(std::string identity, std::string anchor, double lhs,
                                      double rhs, double tol);

bool all_passed(const std::vector<VerificationReport>& reports);

nlohmann::json complex_to_json(Complex z);

}  // namespace ssflab
