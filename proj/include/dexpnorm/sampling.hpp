#pragma once

#include <Eigen/Dense>

namespace dexpnorm {

struct BruteForceExtremes {
  double min = 0.0;
  double max = 0.0;
};

/// Extremes of |A y| over unit y by a deterministic low-discrepancy sphere
/// mesh (Halton points pushed through Box-Muller, then normalized) followed
/// by projected power refinement. Shares nothing with the SVD route it
/// cross-checks. Values are guaranteed inside [s_n, s_1]; with enough mesh
/// points and refinement they converge to the endpoints.
/// Throws std::invalid_argument when mesh < 100.
BruteForceExtremes brute_force_extremes(const Eigen::Ref<const Eigen::MatrixXd>& a, int mesh,
                                        int refine_steps);

/// k-th Halton point in the given prime base (index starts at 1).
double halton(int index, int base);

}  // namespace dexpnorm
