#include "dexpnorm/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace dexpnorm {

double halton(int index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}

namespace {

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

/// Deterministic near-uniform unit vector: Box-Muller over consecutive
/// Halton coordinates, then normalize.
Eigen::VectorXd mesh_point(int index, int n) {
  Eigen::VectorXd v(n);
  for (int d = 0; d < n; d += 2) {
    const double u1 = std::max(halton(index, kPrimes[d % 16]), 1e-12);
    const double u2 = halton(index, kPrimes[(d + 1) % 16]);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    v[d] = radius * std::cos(angle);
    if (d + 1 < n) v[d + 1] = radius * std::sin(angle);
  }
  const double norm = v.norm();
  return norm > 0 ? Eigen::VectorXd(v / norm) : Eigen::VectorXd(Eigen::VectorXd::Unit(n, 0));
}

}  // namespace

BruteForceExtremes brute_force_extremes(const Eigen::Ref<const Eigen::MatrixXd>& a, int mesh,
                                        int refine_steps) {
  if (mesh < 100) throw std::invalid_argument("brute_force_extremes: mesh must be >= 100");
  if (a.rows() != a.cols())
    throw std::invalid_argument("brute_force_extremes: matrix must be square");
  const int n = static_cast<int>(a.rows());

  Eigen::VectorXd best_max_y = Eigen::VectorXd::Unit(n, 0);
  Eigen::VectorXd best_min_y = best_max_y;
  double best_max = (a * best_max_y).norm();
  double best_min = best_max;
  for (int i = 1; i <= mesh; ++i) {
    const Eigen::VectorXd y = mesh_point(i, n);
    const double value = (a * y).norm();
    if (value > best_max) {
      best_max = value;
      best_max_y = y;
    }
    if (value < best_min) {
      best_min = value;
      best_min_y = y;
    }
  }

  // Power refinement on A^T A walks the max point to the top singular
  // direction; the shifted iteration (cI - A^T A), c >= s1^2, walks the min
  // point to the bottom one. Frobenius norm supplies a cheap valid shift.
  const Eigen::MatrixXd gram = a.transpose() * a;
  const double shift = a.squaredNorm();
  for (int i = 0; i < refine_steps; ++i) {
    Eigen::VectorXd t = gram * best_max_y;
    if (t.norm() > 0) best_max_y = t / t.norm();
    Eigen::VectorXd b = shift * best_min_y - gram * best_min_y;
    if (b.norm() > 0) best_min_y = b / b.norm();
  }
  best_max = std::max(best_max, (a * best_max_y).norm());
  best_min = std::min(best_min, (a * best_min_y).norm());
  return {best_min, best_max};
}

}  // namespace dexpnorm
