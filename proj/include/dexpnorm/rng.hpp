#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>

namespace dexpnorm {

/// Deterministic random source (splitmix64 core, hand-rolled Box-Muller).
/// Identical seeds produce identical streams on every platform, which the
/// property suites rely on for byte-reproducible reports.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Log-uniform in [lo, hi], lo > 0. Exercises both small and large scales.
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  int uniform_int(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

  double gaussian() {
    // Box-Muller, cosine branch only; u1 in (0,1].
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  Eigen::VectorXd gaussian_vector(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = gaussian();
    return v;
  }

  Eigen::MatrixXd gaussian_matrix(int rows, int cols) {
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = gaussian();
    return m;
  }

  /// Uniform point on the unit sphere of R^n.
  Eigen::VectorXd unit_vector(int n) {
    Eigen::VectorXd v = gaussian_vector(n);
    double norm = v.norm();
    while (norm < 1e-300) {
      v = gaussian_vector(n);
      norm = v.norm();
    }
    return v / norm;
  }

  /// Derive an independent stream for a given trial index; reduction order of
  /// parallel trials then cannot affect any per-trial draw.
  Rng fork(std::uint64_t index) const {
    Rng child(state_ ^ (0xd1342543de82ef95ULL * (index + 1)));
    child.next_u64();
    return child;
  }

 private:
  std::uint64_t state_;
};

}  // namespace dexpnorm
