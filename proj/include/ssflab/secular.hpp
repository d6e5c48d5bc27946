#pragma once

#include <vector>

namespace ssflab {

/// Eigenvalues of diag(d) + alpha * w w^T given d ascending and squared
/// weights |w_j|^2 >= 0.
///
/// Atoms with zero weight and repeated diagonal entries are deflated (they stay
/// eigenvalues of the perturbed matrix). The remaining roots of the secular
/// function 1 + alpha * sum_j w_j / (d_j - lambda) are bracketed one per gap
/// and found by bisection in shifted coordinates.
std::vector<double> rank_one_update_eigenvalues(const std::vector<double>& d,
                                                const std::vector<double>& weights, double alpha);

}  // namespace ssflab
