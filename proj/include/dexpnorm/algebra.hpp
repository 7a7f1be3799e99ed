#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace dexpnorm {

/// Bracket table of a finite-dimensional real Lie algebra:
/// [e_i, e_j] = sum_k c(i,j,k) e_k, indices 0-based.
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(int dim)
      : dim_(dim), c_(static_cast<std::size_t>(dim) * dim * dim, 0.0) {
    if (dim < 1) throw std::invalid_argument("StructureConstants: dim must be >= 1");
  }

  int dim() const { return dim_; }

  double operator()(int i, int j, int k) const { return c_[index(i, j, k)]; }

  /// Sets c(i,j,k) and the antisymmetric partner c(j,i,k) = -value.
  void set_bracket(int i, int j, int k, double value) {
    c_[index(i, j, k)] = value;
    c_[index(j, i, k)] = -value;
  }

  /// Raw write without the antisymmetric completion (used by file loading
  /// and by tests that build deliberately broken tensors).
  void set_raw(int i, int j, int k, double value) { c_[index(i, j, k)] = value; }

  /// Coordinate vector of [x, y].
  Eigen::VectorXd bracket(const Eigen::Ref<const Eigen::VectorXd>& x,
                          const Eigen::Ref<const Eigen::VectorXd>& y) const;

  bool all_zero() const;

 private:
  std::size_t index(int i, int j, int k) const {
    if (i < 0 || j < 0 || k < 0 || i >= dim_ || j >= dim_ || k >= dim_)
      throw std::out_of_range("StructureConstants: index out of range");
    return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
  }

  int dim_ = 0;
  std::vector<double> c_;
};

struct ValidationIssue {
  enum class Kind { antisymmetry, jacobi, structural };
  Kind kind = Kind::structural;
  int i = -1, j = -1, k = -1, l = -1;
  double residual = 0.0;
  std::string describe() const;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

/// Check antisymmetry (|c(i,j,k) + c(j,i,k)| <= antisym_tol) and the Jacobi
/// identity (residual <= jacobi_tol); the report lists every violation with
/// its indices and magnitude.
ValidationReport validate(const StructureConstants& sc, double antisym_tol = 1e-12,
                          double jacobi_tol = 1e-10);

/// Positive-definite Gram matrix G_ij = <e_i, e_j>.
struct InnerProduct {
  Eigen::MatrixXd gram;

  static InnerProduct identity(int n) { return {Eigen::MatrixXd::Identity(n, n)}; }

  /// Throws std::invalid_argument unless symmetric within 1e-12 and positive
  /// definite (smallest eigenvalue > 1e-10 * largest).
  void check() const;
};

/// A real Lie algebra with an inner product, plus a cached coordinate change
/// to an orthonormal basis (Cholesky factor of the Gram matrix) and the
/// structure constants re-expressed there. All spectral work downstream
/// happens in the orthonormal coordinates.
class LieAlgebra {
 public:
  LieAlgebra(std::string name, StructureConstants sc);
  LieAlgebra(std::string name, StructureConstants sc, InnerProduct ip);

  const std::string& name() const { return name_; }
  int dim() const { return sc_.dim(); }
  const StructureConstants& structure() const { return sc_; }
  const StructureConstants& structure_ortho() const { return sc_ortho_; }
  const InnerProduct& inner_product() const { return ip_; }
  bool gram_is_identity() const { return gram_is_identity_; }

  /// Input-basis coordinates -> orthonormal coordinates (y = L^T x).
  Eigen::VectorXd to_ortho(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  /// Orthonormal coordinates -> input-basis coordinates.
  Eigen::VectorXd from_ortho(const Eigen::Ref<const Eigen::VectorXd>& y) const;
  /// |x| in the algebra's inner product.
  double norm(const Eigen::Ref<const Eigen::VectorXd>& x) const { return to_ortho(x).norm(); }

  /// Matrix of ad_{f_a} for the a-th orthonormal basis vector.
  const Eigen::MatrixXd& ad_basis(int a) const { return ad_basis_[a]; }

 private:
  void finish_setup();

  std::string name_;
  StructureConstants sc_;
  InnerProduct ip_;
  bool gram_is_identity_ = true;
  Eigen::MatrixXd chol_lower_;  // G = L L^T
  StructureConstants sc_ortho_;
  std::vector<Eigen::MatrixXd> ad_basis_;
};

/// ad_x in orthonormal coordinates (column j holds [x, f_j]).
struct AdOperator {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd source;    // input-basis coefficients of x
  double norm_x = 0.0;
  Eigen::MatrixXd unit;      // ad of x/|x|; zero matrix when x = 0
};

/// Build ad_x for x given in the algebra's input basis.
AdOperator ad(const LieAlgebra& alg, const Eigen::Ref<const Eigen::VectorXd>& x);

/// Two-sided estimate of delta_0 = max |[x1, y1]| over unit vectors of the
/// complexified algebra. `lower` is the best real-sphere value found by
/// multi-start alternating ascent of sigma_max(ad_x); `upper` is the
/// certificate sqrt(sum_i ||ad_{f_i}||_F^2), valid over the complexification
/// because the bracket coefficients are real.
struct DeltaZeroEstimate {
  double lower = 0.0;
  double upper = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// budget counts sigma_max evaluations; throws std::invalid_argument when <= 0.
DeltaZeroEstimate delta_zero(const LieAlgebra& alg, int budget);

}  // namespace dexpnorm
