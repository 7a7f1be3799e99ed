#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "dexpnorm/algebra.hpp"

namespace dexpnorm {

struct LambdaTildeExtremes {
  double min = 1.0;
  double max = 1.0;
};

/// min/max of {1} u { |phi(lambda_j t)| } over the nonzero eigenvalues
/// lambda_j of ad of the unit direction; t = |x|. The constant 1 stands in
/// for the structural zero eigenvalue (ad_x x = 0 always). Throws
/// std::domain_error for t <= 0.
LambdaTildeExtremes lambda_tilde_extremes(const std::vector<std::complex<double>>& unit_eigs,
                                          double t);

/// Knobs shared by the bound computations.
struct BoundOptions {
  double kappa_tol = 1e8;       // diagonalizability certificate threshold
  double eig_zero_tol = 1e-9;   // modulus below which a unit-spectrum eigenvalue counts as zero
};

/// Diagonalizable-case sandwich: lower = C lambda_tilde_min, upper =
/// D lambda_tilde_max with C = 1/kappa(P), D = kappa(P) for the unit-column
/// eigenvector matrix P of the unit direction.
struct Thm1Bounds {
  double lower = 0.0;
  double upper = 0.0;
  double C = 0.0;
  double D = 0.0;
  double kappa = 0.0;
};

/// nullopt when ad of the unit direction fails the diagonalizability
/// certificate. Throws std::domain_error for x = 0.
std::optional<Thm1Bounds> thm1_bounds(const LieAlgebra& alg,
                                      const Eigen::Ref<const Eigen::VectorXd>& x,
                                      const BoundOptions& opts = {});

/// General two-sided bounds driven by the bracket-norm constant:
///   upper = (e^{d|x|} - 1)/(d|x|),
///   lower = upper^{1-n} * prod_j |phi(lambda_j |x|)|,
/// with d the delta_0 upper certificate. lower_log carries the lower bound in
/// log domain (it underflows linearly for large |x|). An abelian algebra
/// (delta0_upper = 0) returns exactly (1, 0, 1).
struct Thm2Bounds {
  double lower = 1.0;
  double lower_log = 0.0;
  double upper = 1.0;
};

Thm2Bounds thm2_bounds(const LieAlgebra& alg, const Eigen::Ref<const Eigen::VectorXd>& x,
                       double delta0_upper, const BoundOptions& opts = {});

/// Nilpotent-direction polynomial bounds: with p the minimal power killing
/// ad_x and d the delta_0 certificate,
///   upper = Q1(|x|) = sum_{k=0}^{p-1} (d|x|)^k / (k+1)!,
///   lower = Q1(|x|)^{1-n}.
struct NilpotentBounds {
  int p_step = 1;
  double upper = 1.0;
  double lower = 1.0;
  double lower_log = 0.0;
};

/// nullopt when ad_x is not (certified) nilpotent. Throws std::domain_error
/// for x = 0.
std::optional<NilpotentBounds> nilpotent_bounds(const LieAlgebra& alg,
                                                const Eigen::Ref<const Eigen::VectorXd>& x,
                                                double delta0_upper);

/// Minimal k <= n with ad_x^k = 0, or nullopt if ad_x is not nilpotent.
/// Exact when the matrix has integer entries; relative-norm test otherwise.
std::optional<int> nilpotency_step(const Eigen::Ref<const Eigen::MatrixXd>& a);

/// Decay study along the ray t -> t*x_hat: tracks t * s_min(phi(ad_{t x_hat}))
/// over the grid. The infimum must stay positive whenever the operator stays
/// invertible; hitting a singular grid point (some phi(lambda_j t) = 0) is
/// reported instead of a value.
struct CorollaryDecay {
  enum class Status { ok, defective, singular };
  Status status = Status::ok;
  double min_value = 0.0;
  double witness_t = 0.0;
  double singular_t = 0.0;                        // set when status == singular
  std::vector<std::pair<double, double>> running; // (t, t * s_min)
};

CorollaryDecay corollary_decay(const LieAlgebra& alg,
                               const Eigen::Ref<const Eigen::VectorXd>& x_hat,
                               const std::vector<double>& t_grid,
                               const BoundOptions& opts = {});

/// Exact extremes of |d exp_x(y)| over unit y plus every applicable bound.
struct BoundReport {
  std::string algebra;
  Eigen::VectorXd x;            // input-basis coefficients
  double x_norm = 0.0;
  int p_nonzero = 0;            // nonzero eigenvalues of the unit direction
  double delta0_upper = 0.0;

  double exact_min = 1.0;
  double exact_max = 1.0;
  double lambda_tilde_min = 1.0;
  double lambda_tilde_max = 1.0;

  std::optional<Thm1Bounds> thm1;
  Thm2Bounds thm2;
  std::optional<NilpotentBounds> nilp;
};

/// Throws std::domain_error for x = 0 (d exp_0 is the identity; callers
/// present that case directly).
BoundReport bound_report(const LieAlgebra& alg, const Eigen::Ref<const Eigen::VectorXd>& x,
                         double delta0_upper, const BoundOptions& opts = {});

}  // namespace dexpnorm
