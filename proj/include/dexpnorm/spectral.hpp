#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dexpnorm/rng.hpp"

namespace dexpnorm {

/// Eigen/singular data of one operator, ordered the way every bound in this
/// library consumes it.
struct SpectralSummary {
  Eigen::VectorXcd eigenvalues;     // modulus non-increasing
  Eigen::VectorXd singular_values;  // non-increasing
  double eigvec_condition = std::numeric_limits<double>::infinity();
  bool diagonalizable = false;
};

namespace detail {

inline bool eig_order(const std::complex<double>& a, const std::complex<double>& b) {
  const double ma = std::abs(a), mb = std::abs(b);
  if (ma != mb) return ma > mb;
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

}  // namespace detail

/// Eigenvalues with multiplicity, sorted by non-increasing modulus; ties
/// broken by descending real part, then descending imaginary part, so output
/// is deterministic.
template <typename Derived>
Eigen::VectorXcd eigenvalues(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() != a.cols()) throw std::invalid_argument("eigenvalues: matrix must be square");
  Eigen::VectorXcd ev;
  if constexpr (Eigen::NumTraits<Scalar>::IsComplex) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, false);
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("eigenvalues: dense solver failed to converge (n=" +
                               std::to_string(a.rows()) + ")");
    ev = solver.eigenvalues();
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(a, false);
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("eigenvalues: dense solver failed to converge (n=" +
                               std::to_string(a.rows()) + ")");
    ev = solver.eigenvalues();
  }
  std::vector<std::complex<double>> v(ev.data(), ev.data() + ev.size());
  std::sort(v.begin(), v.end(), detail::eig_order);
  return Eigen::Map<Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

/// Singular values, non-increasing.
template <typename Derived>
Eigen::VectorXd singular_values(const Eigen::MatrixBase<Derived>& a) {
  using Matrix =
      Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (a.rows() != a.cols()) throw std::invalid_argument("singular_values: matrix must be square");
  return Eigen::JacobiSVD<Matrix>(a).singularValues();
}

struct Diagonalizability {
  bool diagonalizable = false;
  Eigen::MatrixXcd eigenvectors;  // unit-norm columns
  double kappa = std::numeric_limits<double>::infinity();
};

/// Certify diagonalizability through the conditioning of an eigenvector
/// matrix P with unit-norm columns: diagonalizable iff kappa(P) = s1/sn <= tol.
/// A defective matrix yields kappa = +inf. The certificate is what turns the
/// diagonalizable-case bound constants into concrete numbers (C = 1/kappa,
/// D = kappa), so kappa is always reported.
inline Diagonalizability diagonalizability(const Eigen::Ref<const Eigen::MatrixXd>& a,
                                           double tol = 1e8) {
  if (tol <= 0) throw std::invalid_argument("diagonalizability: tol must be positive");
  if (a.rows() != a.cols())
    throw std::invalid_argument("diagonalizability: matrix must be square");
  Diagonalizability result;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, true);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("diagonalizability: dense solver failed to converge");
  result.eigenvectors = solver.eigenvectors();
  for (Eigen::Index j = 0; j < result.eigenvectors.cols(); ++j) {
    const double norm = result.eigenvectors.col(j).norm();
    if (norm > 0) result.eigenvectors.col(j) /= norm;
  }
  const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXcd>(result.eigenvectors).singularValues();
  const double smin = s(s.size() - 1);
  result.kappa = smin > 0 ? s(0) / smin : std::numeric_limits<double>::infinity();
  result.diagonalizable = std::isfinite(result.kappa) && result.kappa <= tol;
  return result;
}

inline SpectralSummary spectral_summary(const Eigen::Ref<const Eigen::MatrixXd>& a,
                                        double kappa_tol = 1e8) {
  SpectralSummary s;
  s.eigenvalues = eigenvalues(a);
  s.singular_values = singular_values(a);
  const Diagonalizability d = diagonalizability(a, kappa_tol);
  s.eigvec_condition = d.kappa;
  s.diagonalizable = d.diagonalizable;
  return s;
}

/// One sampled |Ay| that escaped [s_n - tol, s_1 + tol].
struct MinimaxViolation {
  Eigen::VectorXd y;
  double value = 0.0;
};

struct MinimaxReport {
  double s1 = 0.0;
  double sn = 0.0;
  double sampled_max = 0.0;
  double sampled_min = 0.0;
  double refined_max = 0.0;  // ascent started at the top right singular vector
  double refined_min = 0.0;  // descent started at the bottom one
  std::vector<MinimaxViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Sample |Ay| over unit y: every value must land in [s_n, s_1] and local
/// refinement from the extremal right singular vectors must reproduce the
/// extremes. Used by the harness as the runtime face of the minimax principle.
inline MinimaxReport minimax_check(const Eigen::Ref<const Eigen::MatrixXd>& a, int sample_budget,
                                   Rng& rng) {
  if (sample_budget < 100) throw std::invalid_argument("minimax_check: budget must be >= 100");
  if (a.rows() != a.cols()) throw std::invalid_argument("minimax_check: matrix must be square");
  const int n = static_cast<int>(a.rows());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  MinimaxReport report;
  report.s1 = svd.singularValues()(0);
  report.sn = svd.singularValues()(n - 1);

  report.sampled_max = -std::numeric_limits<double>::infinity();
  report.sampled_min = std::numeric_limits<double>::infinity();
  const double tol = 1e-10;
  for (int i = 0; i < sample_budget; ++i) {
    const Eigen::VectorXd y = rng.unit_vector(n);
    const double value = (a * y).norm();
    report.sampled_max = std::max(report.sampled_max, value);
    report.sampled_min = std::min(report.sampled_min, value);
    if (value > report.s1 + tol || value < report.sn - tol)
      report.violations.push_back({y, value});
  }

  // Projected power refinement on A^T A from the singular-vector starts; the
  // shifted iteration (cI - A^T A) walks to the bottom one.
  const Eigen::MatrixXd gram = a.transpose() * a;
  const double shift = a.squaredNorm();
  Eigen::VectorXd top = svd.matrixV().col(0);
  Eigen::VectorXd bottom = svd.matrixV().col(n - 1);
  for (int i = 0; i < 50; ++i) {
    Eigen::VectorXd t = gram * top;
    if (t.norm() > 0) top = t / t.norm();
    Eigen::VectorXd b = shift * bottom - gram * bottom;
    if (b.norm() > 0) bottom = b / b.norm();
  }
  report.refined_max = (a * top).norm();
  report.refined_min = (a * bottom).norm();
  report.sampled_max = std::max(report.sampled_max, report.refined_max);
  report.sampled_min = std::min(report.sampled_min, report.refined_min);
  return report;
}

}  // namespace dexpnorm
