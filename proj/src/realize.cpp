#include "ssflab/realize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "ssflab/koplienko.hpp"

namespace ssflab {

namespace {

struct Segment {
  double x0, x1, h0, h1;

  double width() const { return x1 - x0; }
  double area() const { return 0.5 * (h0 + h1) * width(); }
  /// Side of the largest square anchored at the higher end.
  double square() const {
    const double w = width();
    const double k = std::abs(h1 - h0) / w;
    return std::min(w, std::max(h0, h1) / (1.0 + k));
  }
};

struct BySquare {
  bool operator()(const Segment& l, const Segment& r) const { return l.square() < r.square(); }
};

constexpr std::size_t kMaxSquares = 4'000'000;

// A cut within rounding distance of the far endpoint is the far endpoint; otherwise
// x0 + (x1 - x0) != x1 leaves slivers between squares that should share an end.
double snap(double cut, double far) {
  return std::abs(cut - far) <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(far)) ? far
                                                                                                             : cut;
}

}  // namespace

SquareDecomposition greedy_square_decomposition(const PiecewiseFunction& target, int rounds) {
  if (rounds < 0) throw InvalidInput("square decomposition: rounds must be nonnegative");
  std::priority_queue<Segment, std::vector<Segment>, BySquare> heap;
  const auto& t = target.breakpoints();
  for (std::size_t k = 0; k < target.segment_count(); ++k) {
    const Segment s{t[k], t[k + 1], target.pieces()[k].at(t[k]), target.pieces()[k].at(t[k + 1])};
    if (s.h0 < 0.0 || s.h1 < 0.0) {
      std::ostringstream os;
      os << "square decomposition: target is negative on (" << t[k] << ", " << t[k + 1] << ')';
      throw InvalidInput(os.str());
    }
    if (s.h0 > 0.0 || s.h1 > 0.0) heap.push(s);
  }

  const auto residual_integral = [&heap] {
    auto copy = heap;
    double total = 0.0;
    while (!copy.empty()) {
      total += copy.top().area();
      copy.pop();
    }
    return total;
  };

  SquareDecomposition out;
  out.round_end.push_back(0);
  out.residual_integrals.push_back(residual_integral());
  for (int r = 1; r <= rounds; ++r) {
    const double goal = 0.5 * out.residual_integrals.back();
    double captured = 0.0;
    while (captured < goal && !heap.empty()) {
      const Segment seg = heap.top();
      heap.pop();
      const double s = seg.square();
      if (!(s > 0.0)) continue;
      const double w = seg.width();
      const double slope = (seg.h1 - seg.h0) / w;
      if (seg.h1 >= seg.h0) {
        // Square on [x1 - s, x1].
        const double cut = snap(seg.x1 - s, seg.x0);
        const double h_cut = seg.h1 - slope * s;
        out.intervals.push_back({cut, seg.x1});
        if (cut > seg.x0) heap.push({seg.x0, cut, seg.h0, h_cut});
        const Segment top{cut, seg.x1, std::max(0.0, h_cut - s), std::max(0.0, seg.h1 - s)};
        if (top.width() > 0.0 && (top.h0 > 0.0 || top.h1 > 0.0)) heap.push(top);
      } else {
        // Square on [x0, x0 + s].
        const double cut = snap(seg.x0 + s, seg.x1);
        const double h_cut = seg.h0 + slope * s;
        out.intervals.push_back({seg.x0, cut});
        if (cut < seg.x1) heap.push({cut, seg.x1, h_cut, seg.h1});
        const Segment top{seg.x0, cut, std::max(0.0, seg.h0 - s), std::max(0.0, h_cut - s)};
        if (top.width() > 0.0 && (top.h0 > 0.0 || top.h1 > 0.0)) heap.push(top);
      }
      captured += s * s;
      if (out.intervals.size() > kMaxSquares) throw NumericalFailure("square decomposition: too many squares");
    }
    out.round_end.push_back(out.intervals.size());
    out.residual_integrals.push_back(residual_integral());
  }
  return out;
}

PiecewiseFunction interval_sum(const std::vector<Interval>& intervals) {
  std::vector<double> t;
  t.reserve(2 * intervals.size());
  for (const Interval& i : intervals) {
    if (!(i.hi > i.lo)) throw InvalidInput("interval sum: empty interval");
    t.push_back(i.lo);
    t.push_back(i.hi);
  }
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  if (t.size() < 2) return {};
  // Difference array over the sorted breakpoints.
  std::vector<double> delta(t.size(), 0.0);
  for (const Interval& i : intervals) {
    const auto lo = static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), i.lo) - t.begin());
    const auto hi = static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), i.hi) - t.begin());
    delta[lo] += i.length();
    delta[hi] -= i.length();
  }
  std::vector<double> values;
  values.reserve(t.size() - 1);
  double running = 0.0;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    running += delta[k];
    values.push_back(running);
  }
  return PiecewiseFunction::step(t, values);
}

OperatorPair build_block_pair(const std::vector<Interval>& intervals) {
  if (intervals.empty()) throw InvalidInput("block pair: no intervals");
  std::vector<double> a, b;
  a.reserve(2 * intervals.size());
  b.reserve(2 * intervals.size());
  for (const Interval& i : intervals) {
    if (!(i.hi > i.lo)) throw InvalidInput("block pair: empty interval");
    b.push_back(i.lo);
    b.push_back(i.hi);
    a.push_back(i.hi);
    a.push_back(i.lo);
  }
  return OperatorPair(HermitianOperator::diagonal(a), HermitianOperator::diagonal(b));
}

VerificationReport realization_check(const PiecewiseFunction& target, const OperatorPair& pair, int rounds) {
  const double error = (koplienko_ssf(pair) - target).l1_norm();
  return upper_bound_report("int|eta - target| <= 2^-m int target", "koplienko-realization", error,
                            std::ldexp(target.integral(), -rounds), 1e-10);
}

namespace {

std::vector<double> number_array(const nlohmann::json& doc, const char* key) {
  const std::string path = std::string("$.") + key;
  if (!doc.contains(key)) throw InvalidInput(path + ": missing");
  const nlohmann::json& arr = doc.at(key);
  if (!arr.is_array()) throw InvalidInput(path + ": expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      std::ostringstream os;
      os << path << '[' << i << "]: expected a number";
      throw InvalidInput(os.str());
    }
    out.push_back(arr[i].get<double>());
  }
  return out;
}

}  // namespace

PiecewiseFunction parse_target(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InvalidInput("$: expected an object");
  const std::vector<double> t = number_array(doc, "breakpoints");
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (!(t[i] < t[i + 1])) {
      std::ostringstream os;
      os << "$.breakpoints[" << i + 1 << "]: breakpoints must be strictly increasing";
      throw InvalidInput(os.str());
    }
  }
  const std::size_t segments = t.empty() ? 0 : t.size() - 1;
  std::vector<AffinePiece> pieces;
  if (doc.contains("values")) {
    const std::vector<double> v = number_array(doc, "values");
    if (v.size() != segments) throw InvalidInput("$.values: need one value per interval");
    for (double x : v) pieces.push_back({0.0, x});
  } else {
    const std::vector<double> s = number_array(doc, "slopes");
    const std::vector<double> c = number_array(doc, "intercepts");
    if (s.size() != segments) throw InvalidInput("$.slopes: need one slope per interval");
    if (c.size() != segments) throw InvalidInput("$.intercepts: need one intercept per interval");
    for (std::size_t i = 0; i < segments; ++i) pieces.push_back({s[i], c[i]});
  }
  if (segments == 0) return {};
  return PiecewiseFunction(t, std::move(pieces));
}

nlohmann::json target_to_json(const PiecewiseFunction& f) {
  nlohmann::json doc;
  doc["breakpoints"] = f.breakpoints();
  if (f.is_step()) {
    std::vector<double> v;
    for (const auto& p : f.pieces()) v.push_back(p.intercept);
    doc["values"] = v;
  } else {
    std::vector<double> s, c;
    for (const auto& p : f.pieces()) {
      s.push_back(p.slope);
      c.push_back(p.intercept);
    }
    doc["slopes"] = s;
    doc["intercepts"] = c;
  }
  return doc;
}

PiecewiseFunction tent_target() { return PiecewiseFunction({-0.5, 0.0, 0.5}, {{1.0, 0.5}, {-1.0, 0.5}}); }

}  // namespace ssflab
