#include "dexpnorm/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dexpnorm/phi.hpp"
#include "dexpnorm/spectral.hpp"

namespace dexpnorm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::complex<double>> nonzero_unit_eigs(const Eigen::MatrixXd& ad_unit,
                                                    double eig_zero_tol) {
  std::vector<std::complex<double>> out;
  const Eigen::VectorXcd eigs = eigenvalues(ad_unit);
  for (Eigen::Index i = 0; i < eigs.size(); ++i)
    if (std::abs(eigs[i]) > eig_zero_tol) out.push_back(eigs[i]);
  return out;
}

AdOperator ad_nonzero(const LieAlgebra& alg, const Eigen::Ref<const Eigen::VectorXd>& x,
                      const char* who) {
  AdOperator op = ad(alg, x);
  if (op.norm_x == 0.0) throw std::domain_error(std::string(who) + ": x must be nonzero");
  return op;
}

}  // namespace

LambdaTildeExtremes lambda_tilde_extremes(const std::vector<std::complex<double>>& unit_eigs,
                                          double t) {
  if (t <= 0.0) throw std::domain_error("lambda_tilde_extremes: t must be positive");
  LambdaTildeExtremes ext;  // starts at the constant 1 for the zero eigenvalue
  for (const std::complex<double>& lambda : unit_eigs) {
    const double value = std::abs(phi(lambda * t));
    ext.min = std::min(ext.min, value);
    ext.max = std::max(ext.max, value);
  }
  return ext;
}

std::optional<Thm1Bounds> thm1_bounds(const LieAlgebra& alg,
                                      const Eigen::Ref<const Eigen::VectorXd>& x,
                                      const BoundOptions& opts) {
  const AdOperator op = ad_nonzero(alg, x, "thm1_bounds");
  const Diagonalizability diag = diagonalizability(op.unit, opts.kappa_tol);
  if (!diag.diagonalizable) return std::nullopt;
  const LambdaTildeExtremes ext =
      lambda_tilde_extremes(nonzero_unit_eigs(op.unit, opts.eig_zero_tol), op.norm_x);
  Thm1Bounds b;
  b.kappa = diag.kappa;
  b.C = 1.0 / diag.kappa;
  b.D = diag.kappa;
  b.lower = b.C * ext.min;
  b.upper = b.D * ext.max;
  return b;
}

Thm2Bounds thm2_bounds(const LieAlgebra& alg, const Eigen::Ref<const Eigen::VectorXd>& x,
                       double delta0_upper, const BoundOptions& opts) {
  const AdOperator op = ad_nonzero(alg, x, "thm2_bounds");
  if (delta0_upper < 0.0) throw std::domain_error("thm2_bounds: delta0_upper must be >= 0");
  Thm2Bounds b;
  if (delta0_upper == 0.0) return b;  // abelian: the operator is the identity

  const int n = alg.dim();
  // (e^u - 1)/u = phi(-u); phi's series branch keeps small u accurate.
  const double u = delta0_upper * op.norm_x;
  b.upper = phi(-u);

  double log_prod = 0.0;
  for (const std::complex<double>& lambda : nonzero_unit_eigs(op.unit, opts.eig_zero_tol)) {
    const double mod = std::abs(phi(lambda * op.norm_x));
    log_prod += mod > 0.0 ? std::log(mod) : -kInf;
  }
  b.lower_log = static_cast<double>(1 - n) * std::log(b.upper) + log_prod;
  b.lower = std::exp(b.lower_log);
  return b;
}

std::optional<int> nilpotency_step(const Eigen::Ref<const Eigen::MatrixXd>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("nilpotency_step: matrix must be square");
  const int n = static_cast<int>(a.rows());
  const double norm = a.norm();
  if (norm == 0.0) return 1;

  bool integral = true;
  for (int r = 0; r < n && integral; ++r)
    for (int c = 0; c < n; ++c)
      if (a(r, c) != std::nearbyint(a(r, c))) {
        integral = false;
        break;
      }

  Eigen::MatrixXd power = a;
  for (int k = 1; k <= n; ++k) {
    if (integral) {
      // Integer matrices below 2^53 multiply exactly in doubles, so the
      // power either is the zero matrix or it is not; no tolerance needed.
      if (power.isZero(0.0)) return k;
    } else {
      if (power.norm() <= 1e-10 * std::pow(norm, k)) return k;
    }
    if (k < n) power = (power * a).eval();
  }
  return std::nullopt;
}

std::optional<NilpotentBounds> nilpotent_bounds(const LieAlgebra& alg,
                                                const Eigen::Ref<const Eigen::VectorXd>& x,
                                                double delta0_upper) {
  const AdOperator op = ad_nonzero(alg, x, "nilpotent_bounds");
  if (delta0_upper < 0.0) throw std::domain_error("nilpotent_bounds: delta0_upper must be >= 0");
  const std::optional<int> step = nilpotency_step(op.matrix);
  if (!step) return std::nullopt;

  NilpotentBounds b;
  b.p_step = *step;
  const double u = delta0_upper * op.norm_x;
  double q1 = 1.0, term = 1.0;
  for (int k = 1; k < b.p_step; ++k) {
    term *= u / static_cast<double>(k);       // u^k / k!
    q1 += term / static_cast<double>(k + 1);  // u^k / (k+1)!
  }
  b.upper = q1;
  b.lower_log = static_cast<double>(1 - alg.dim()) * std::log(q1);
  b.lower = std::exp(b.lower_log);
  return b;
}

CorollaryDecay corollary_decay(const LieAlgebra& alg,
                               const Eigen::Ref<const Eigen::VectorXd>& x_hat,
                               const std::vector<double>& t_grid, const BoundOptions& opts) {
  AdOperator op = ad_nonzero(alg, x_hat, "corollary_decay");
  if (t_grid.empty()) throw std::domain_error("corollary_decay: grid must be nonempty");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] < 1.0) throw std::domain_error("corollary_decay: grid values must be >= 1");
    if (i > 0 && t_grid[i] <= t_grid[i - 1])
      throw std::domain_error("corollary_decay: grid must be strictly increasing");
  }

  CorollaryDecay result;
  const Diagonalizability diag = diagonalizability(op.unit, opts.kappa_tol);
  if (!diag.diagonalizable) {
    result.status = CorollaryDecay::Status::defective;
    return result;
  }

  result.min_value = kInf;
  const int n = alg.dim();
  for (double t : t_grid) {
    const PhiOperator p = phi_matrix(t * op.unit);
    const Eigen::VectorXd sv = singular_values(p.matrix);
    const double smin = sv(n - 1);
    if (smin <= 1e-12 * std::max(1.0, sv(0))) {
      result.status = CorollaryDecay::Status::singular;
      result.singular_t = t;
      return result;
    }
    result.running.emplace_back(t, t * smin);
    if (t * smin < result.min_value) {
      result.min_value = t * smin;
      result.witness_t = t;
    }
  }
  return result;
}

BoundReport bound_report(const LieAlgebra& alg, const Eigen::Ref<const Eigen::VectorXd>& x,
                         double delta0_upper, const BoundOptions& opts) {
  const AdOperator op = ad_nonzero(alg, x, "bound_report");
  BoundReport report;
  report.algebra = alg.name();
  report.x = x;
  report.x_norm = op.norm_x;
  report.delta0_upper = delta0_upper;

  const Eigen::VectorXd sv = singular_values(phi_matrix(op.matrix).matrix);
  report.exact_max = sv(0);
  report.exact_min = sv(sv.size() - 1);

  const std::vector<std::complex<double>> eigs = nonzero_unit_eigs(op.unit, opts.eig_zero_tol);
  report.p_nonzero = static_cast<int>(eigs.size());
  const LambdaTildeExtremes ext = lambda_tilde_extremes(eigs, op.norm_x);
  report.lambda_tilde_min = ext.min;
  report.lambda_tilde_max = ext.max;

  report.thm1 = thm1_bounds(alg, x, opts);
  report.thm2 = thm2_bounds(alg, x, delta0_upper, opts);
  report.nilp = nilpotent_bounds(alg, x, delta0_upper);
  return report;
}

}  // namespace dexpnorm
