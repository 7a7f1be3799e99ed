#include "dexpnorm/algebra.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "dexpnorm/rng.hpp"

namespace dexpnorm {

Eigen::VectorXd StructureConstants::bracket(const Eigen::Ref<const Eigen::VectorXd>& x,
                                            const Eigen::Ref<const Eigen::VectorXd>& y) const {
  if (x.size() != dim_ || y.size() != dim_)
    throw std::invalid_argument("bracket: vector length does not match dim");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < dim_; ++j) {
      if (y[j] == 0.0) continue;
      const double w = x[i] * y[j];
      for (int k = 0; k < dim_; ++k) out[k] += w * (*this)(i, j, k);
    }
  }
  return out;
}

bool StructureConstants::all_zero() const {
  for (double v : c_)
    if (v != 0.0) return false;
  return true;
}

std::string ValidationIssue::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::antisymmetry:
      os << "antisymmetry violated at (i=" << i << ", j=" << j << ", k=" << k
         << "): |c(i,j,k) + c(j,i,k)| = " << residual;
      break;
    case Kind::jacobi:
      os << "jacobi identity violated at (i=" << i << ", j=" << j << ", k=" << k << ", l=" << l
         << "): |residual| = " << residual;
      break;
    case Kind::structural:
      os << "structural error: residual " << residual;
      break;
  }
  return os.str();
}

ValidationReport validate(const StructureConstants& sc, double antisym_tol, double jacobi_tol) {
  const int n = sc.dim();
  if (n < 1) throw std::invalid_argument("validate: dim must be >= 1");
  ValidationReport report;

  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double r = std::abs(sc(i, j, k) + sc(j, i, k));
        if (r > antisym_tol)
          report.issues.push_back({ValidationIssue::Kind::antisymmetry, i, j, k, -1, r});
      }

  // Jacobi residual is alternating in (i,j,k), so i<j<k covers every case
  // once antisymmetry holds; violations found above are reported regardless.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double r = 0.0;
          for (int m = 0; m < n; ++m)
            r += sc(i, j, m) * sc(m, k, l) + sc(j, k, m) * sc(m, i, l) +
                 sc(k, i, m) * sc(m, j, l);
          if (std::abs(r) > jacobi_tol)
            report.issues.push_back({ValidationIssue::Kind::jacobi, i, j, k, l, std::abs(r)});
        }
  return report;
}

void InnerProduct::check() const {
  if (gram.rows() != gram.cols() || gram.rows() < 1)
    throw std::invalid_argument("InnerProduct: gram must be square and nonempty");
  const double scale = std::max(1.0, gram.cwiseAbs().maxCoeff());
  if ((gram - gram.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("InnerProduct: gram is not symmetric within 1e-12");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues()(0);
  const double hi = es.eigenvalues()(gram.rows() - 1);
  if (!(lo > 1e-10 * hi))
    throw std::invalid_argument("InnerProduct: gram is not positive definite");
}

LieAlgebra::LieAlgebra(std::string name, StructureConstants sc)
    : name_(std::move(name)), sc_(std::move(sc)), ip_(InnerProduct::identity(sc_.dim())) {
  const ValidationReport report = validate(sc_);
  if (!report.ok())
    throw std::invalid_argument("LieAlgebra '" + name_ + "': structure constants invalid: " +
                                report.issues.front().describe());
  finish_setup();
}

LieAlgebra::LieAlgebra(std::string name, StructureConstants sc, InnerProduct ip)
    : name_(std::move(name)), sc_(std::move(sc)), ip_(std::move(ip)) {
  if (ip_.gram.rows() != sc_.dim())
    throw std::invalid_argument("LieAlgebra: gram dimension does not match structure constants");
  ip_.check();
  const ValidationReport report = validate(sc_);
  if (!report.ok())
    throw std::invalid_argument("LieAlgebra '" + name_ + "': structure constants invalid: " +
                                report.issues.front().describe());
  finish_setup();
}

void LieAlgebra::finish_setup() {
  const int n = sc_.dim();
  gram_is_identity_ = ip_.gram.isIdentity(0.0);
  chol_lower_ = Eigen::LLT<Eigen::MatrixXd>(ip_.gram).matrixL();

  if (gram_is_identity_) {
    sc_ortho_ = sc_;
  } else {
    // f_a = sum_i M_ia e_i with M = L^{-T}; the bracket of two orthonormal
    // basis vectors, re-expressed in orthonormal coordinates, gives the
    // transformed tensor.
    const Eigen::MatrixXd m =
        chol_lower_.transpose().triangularView<Eigen::Upper>().solve(
            Eigen::MatrixXd::Identity(n, n));
    sc_ortho_ = StructureConstants(n);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        const Eigen::VectorXd w = to_ortho(sc_.bracket(m.col(a), m.col(b)));
        for (int c = 0; c < n; ++c)
          if (w[c] != 0.0) sc_ortho_.set_bracket(a, b, c, w[c]);
      }
    const ValidationReport report = validate(sc_ortho_);
    if (!report.ok())
      throw std::invalid_argument("LieAlgebra '" + name_ +
                                  "': orthonormalized structure constants invalid: " +
                                  report.issues.front().describe());
  }

  ad_basis_.reserve(n);
  for (int a = 0; a < n; ++a) {
    Eigen::MatrixXd ada = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) ada(k, j) = sc_ortho_(a, j, k);
    ad_basis_.push_back(std::move(ada));
  }
}

Eigen::VectorXd LieAlgebra::to_ortho(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != dim()) throw std::invalid_argument("to_ortho: vector length does not match dim");
  if (gram_is_identity_) return x;
  return chol_lower_.transpose() * x;
}

Eigen::VectorXd LieAlgebra::from_ortho(const Eigen::Ref<const Eigen::VectorXd>& y) const {
  if (y.size() != dim())
    throw std::invalid_argument("from_ortho: vector length does not match dim");
  if (gram_is_identity_) return y;
  return chol_lower_.transpose().triangularView<Eigen::Upper>().solve(y);
}

AdOperator ad(const LieAlgebra& alg, const Eigen::Ref<const Eigen::VectorXd>& x) {
  const int n = alg.dim();
  if (x.size() != n) throw std::invalid_argument("ad: vector length does not match dim");
  AdOperator op;
  op.source = x;
  const Eigen::VectorXd xo = alg.to_ortho(x);
  op.norm_x = xo.norm();
  op.matrix = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a)
    if (xo[a] != 0.0) op.matrix += xo[a] * alg.ad_basis(a);
  op.unit = op.norm_x > 0 ? Eigen::MatrixXd(op.matrix / op.norm_x)
                          : Eigen::MatrixXd::Zero(n, n);
  return op;
}

namespace {

Eigen::MatrixXd ad_of(const LieAlgebra& alg, const Eigen::VectorXd& xo) {
  const int n = alg.dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a)
    if (xo[a] != 0.0) m += xo[a] * alg.ad_basis(a);
  return m;
}

}  // namespace

DeltaZeroEstimate delta_zero(const LieAlgebra& alg, int budget) {
  if (budget <= 0) throw std::invalid_argument("delta_zero: budget must be positive");
  const int n = alg.dim();

  DeltaZeroEstimate est;
  double frob_sq = 0.0;
  for (int a = 0; a < n; ++a) frob_sq += alg.ad_basis(a).squaredNorm();
  est.upper = std::sqrt(frob_sq);
  if (est.upper == 0.0) {  // abelian
    est.converged = true;
    return est;
  }

  // Multi-start alternating ascent. sigma_max(ad_x) = max_{|u|=|v|=1} u' ad_x v
  // is linear in x for fixed (u, v), so alternating between the top singular
  // pair of ad_x and the maximizing direction x = g/|g|, g_a = u' ad_{f_a} v,
  // is monotone. Fixed internal seed: results do not depend on the caller.
  Rng rng(0x5eed0d31ULL);
  int evals = 0;
  bool all_starts_converged = true;
  const int start_count = std::max(1, n + std::max(4, budget / 32));
  for (int start = 0; start < start_count && evals < budget; ++start) {
    Eigen::VectorXd x =
        start < n ? Eigen::VectorXd(Eigen::VectorXd::Unit(n, start)) : rng.unit_vector(n);
    double prev = -1.0;
    bool converged_here = false;
    while (evals < budget) {
      const Eigen::MatrixXd a = ad_of(alg, x);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
      const double sigma = svd.singularValues()(0);
      ++evals;
      est.lower = std::max(est.lower, sigma);
      if (sigma <= prev * (1.0 + 1e-13)) {
        converged_here = true;
        break;
      }
      prev = sigma;
      const Eigen::VectorXd u = svd.matrixU().col(0);
      const Eigen::VectorXd v = svd.matrixV().col(0);
      Eigen::VectorXd g(n);
      for (int c = 0; c < n; ++c) g[c] = u.dot(alg.ad_basis(c) * v);
      const double gn = g.norm();
      if (gn < 1e-300) {
        converged_here = true;
        break;
      }
      x = g / gn;
    }
    all_starts_converged = all_starts_converged && converged_here;
  }
  est.iterations = evals;
  est.converged = all_starts_converged;
  est.lower = std::min(est.lower, est.upper);  // guard roundoff at the certificate
  return est;
}

}  // namespace dexpnorm
