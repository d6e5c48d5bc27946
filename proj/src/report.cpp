#include "ssflab/report.hpp"

#include <algorithm>
#include <cmath>

namespace ssflab {

double VerificationReport::slack() const {
  switch (kind) {
    case Kind::UpperBound: return rhs.real() - lhs.real();
    case Kind::LowerBound: return lhs.real() - rhs.real();
    case Kind::Identity: break;
  }
  return tolerance - rel_error;
}

nlohmann::json complex_to_json(Complex z) {
  if (z.imag() == 0.0) return z.real();
  return nlohmann::json::array({z.real(), z.imag()});
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["identity"] = identity;
  j["anchor"] = anchor;
  switch (kind) {
    case Kind::Identity: j["kind"] = "identity"; break;
    case Kind::UpperBound: j["kind"] = "upper_bound"; break;
    case Kind::LowerBound: j["kind"] = "lower_bound"; break;
  }
  j["lhs"] = complex_to_json(lhs);
  j["rhs"] = complex_to_json(rhs);
  j["abs_error"] = abs_error;
  j["rel_error"] = rel_error;
  j["tolerance"] = tolerance;
  if (kind != Kind::Identity) j["slack"] = slack();
  j["pass"] = passed;
  if (!note.empty()) j["note"] = note;
  return j;
}

VerificationReport identity_report(std::string identity, std::string anchor, Complex lhs,
                                   Complex rhs, double tol, double scale) {
  VerificationReport r;
  r.identity = std::move(identity);
  r.anchor = std::move(anchor);
  r.kind = VerificationReport::Kind::Identity;
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_error = std::abs(lhs - rhs);
  if (scale <= 0.0) scale = std::max(std::abs(lhs), std::abs(rhs));
  r.rel_error = scale > 0.0 ? r.abs_error / scale : r.abs_error;
  r.tolerance = tol;
  r.passed = std::isfinite(r.rel_error) && r.rel_error <= tol;
  return r;
}

VerificationReport absolute_report(std::string identity, std::string anchor, Complex lhs,
                                   Complex rhs, double tol) {
  VerificationReport r = identity_report(std::move(identity), std::move(anchor), lhs, rhs, tol, 1.0);
  return r;
}

VerificationReport upper_bound_report(std::string identity, std::string anchor, double lhs,
                                      double rhs, double tol) {
  VerificationReport r;
  r.identity = std::move(identity);
  r.anchor = std::move(anchor);
  r.kind = VerificationReport::Kind::UpperBound;
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_error = std::max(0.0, lhs - rhs);
  r.rel_error = r.abs_error;
  r.tolerance = tol;
  r.passed = std::isfinite(lhs) && std::isfinite(rhs) && lhs <= rhs + tol;
  return r;
}

VerificationReport lower_bound_report(std::string identity, std::string anchor, double lhs,
                                      double rhs, double tol) {
  VerificationReport r;
  r.identity = std::move(identity);
  r.anchor = std::move(anchor);
  r.kind = VerificationReport::Kind::LowerBound;
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_error = std::max(0.0, rhs - lhs);
  r.rel_error = r.abs_error;
  r.tolerance = tol;
  r.passed = std::isfinite(lhs) && std::isfinite(rhs) && lhs >= rhs - tol;
  return r;
}

bool all_passed(const std::vector<VerificationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
}

}  // namespace ssflab
