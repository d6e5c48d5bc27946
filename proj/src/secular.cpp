#include "ssflab/secular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ssflab/types.hpp"

namespace ssflab {

namespace {

// 1 + alpha * sum_k w_k / (d_k - (d_j + delta)), with the differences d_k - d_j
// formed first to keep relative accuracy near the pole at d_j.
double secular_shifted(const std::vector<double>& d, const std::vector<double>& w, double alpha,
                       std::size_t j, double delta) {
  double s = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k) s += w[k] / ((d[k] - d[j]) - delta);
  return 1.0 + alpha * s;
}

}  // namespace

std::vector<double> rank_one_update_eigenvalues(const std::vector<double>& d,
                                                const std::vector<double>& weights, double alpha) {
  if (d.size() != weights.size()) throw InvalidInput("secular solver: size mismatch");
  if (!std::is_sorted(d.begin(), d.end())) throw InvalidInput("secular solver: diagonal must be ascending");
  std::vector<double> out;
  out.reserve(d.size());
  if (alpha == 0.0) return d;

  // Deflation: merge equal poles, drop zero weights.
  std::vector<double> poles, w;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (weights[i] < 0.0) throw InvalidInput("secular solver: negative weight");
    if (weights[i] == 0.0) {
      out.push_back(d[i]);
      continue;
    }
    if (!poles.empty() && d[i] == poles.back()) {
      w.back() += weights[i];
      out.push_back(d[i]);
      continue;
    }
    poles.push_back(d[i]);
    w.push_back(weights[i]);
  }
  const std::size_t m = poles.size();
  double total = 0.0;
  for (double v : w) total += v;

  for (std::size_t j = 0; j < m; ++j) {
    // Root between poles[j] and the next pole (alpha > 0), or between the
    // previous pole and poles[j] (alpha < 0), expressed as an offset from poles[j].
    double lo, hi;
    if (alpha > 0.0) {
      lo = 0.0;
      hi = (j + 1 < m) ? poles[j + 1] - poles[j] : alpha * total;
    } else {
      hi = 0.0;
      lo = (j > 0) ? poles[j - 1] - poles[j] : alpha * total;
    }
    // f increases from -inf to +inf across the gap when alpha > 0 and decreases
    // otherwise; bisect on the sign.
    const double sign = alpha > 0.0 ? 1.0 : -1.0;
    double a = lo, b = hi;
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      const double v = sign * secular_shifted(poles, w, alpha, j, mid);
      if (v < 0.0) {
        a = mid;
      } else {
        b = mid;
      }
    }
    out.push_back(poles[j] + 0.5 * (a + b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ssflab
