#pragma once

#include <vector>

#include <json.hpp>

#include "ssflab/hermitian.hpp"
#include "ssflab/piecewise.hpp"
#include "ssflab/report.hpp"

namespace ssflab {

struct Interval {
  double lo;
  double hi;
  double length() const { return hi - lo; }
};

struct SquareDecomposition {
  std::vector<Interval> intervals;
  /// Residual integral before round 1 (the target integral) and after each round.
  std::vector<double> residual_integrals;
  /// intervals[round_end[r-1] .. round_end[r]) were placed in round r (round_end[0] = 0).
  std::vector<std::size_t> round_end;
};

/// Packs squares under the graph of a nonnegative piecewise affine target.
///
/// The residual is kept as independent affine segments. A round repeatedly
/// takes the largest square that fits under a single segment, anchored at its
/// higher end, until at least half of the residual integral at the start of
/// the round has been captured. Throws InvalidInput for negative targets.
SquareDecomposition greedy_square_decomposition(const PiecewiseFunction& target, int rounds);

/// sum_n |I_n| chi_{I_n}.
PiecewiseFunction interval_sum(const std::vector<Interval>& intervals);

/// Diagonal pair with blocks B = diag(lo, hi), A = diag(hi, lo) per interval,
/// whose Koplienko function is |I| chi_I per block. Throws InvalidInput for an empty list.
OperatorPair build_block_pair(const std::vector<Interval>& intervals);

/// int |eta(pair) - target| <= 2^{-m} int target + 1e-10.
VerificationReport realization_check(const PiecewiseFunction& target, const OperatorPair& pair, int rounds);

/// Target documents: {"breakpoints": [...], "values": [...]} for step targets or
/// {"breakpoints": [...], "slopes": [...], "intercepts": [...]} for piecewise affine ones.
PiecewiseFunction parse_target(const nlohmann::json& doc);
nlohmann::json target_to_json(const PiecewiseFunction& f);

/// The tent lambda + 1/2 on (-1/2, 0), 1/2 - lambda on (0, 1/2).
PiecewiseFunction tent_target();

}  // namespace ssflab
