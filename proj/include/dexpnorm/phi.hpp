#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace dexpnorm {

/// phi(z) = (1 - e^{-z}) / z, extended by phi(0) = 1. Entire function; its
/// value on ad_x is the operator whose extremal singular values are the
/// extremes of |d exp_x(y)| over unit y.
///
/// Scalar can be double or std::complex<double>. Below |z| = 0.1 the closed
/// form loses digits to cancellation, so the truncated power series
/// sum_k (-1)^k z^k / (k+1)!  is used there; the two branches agree to
/// ~1e-15 relative at the switch.
template <typename Scalar>
Scalar phi(Scalar z) {
  using std::abs;
  if (abs(z) >= 0.1) return (Scalar(1) - std::exp(-z)) / z;
  Scalar sum(1), term(1);
  for (int k = 1; k <= 24; ++k) {
    term *= -z / static_cast<double>(k);
    const Scalar contrib = term / static_cast<double>(k + 1);
    sum += contrib;
    if (abs(contrib) <= 1e-18 * abs(sum)) break;
  }
  return sum;
}

inline std::complex<double> phi_scalar(std::complex<double> z) { return phi(z); }
inline double phi_scalar(double z) { return phi(z); }

/// phi(A) for a square matrix, together with the evaluation parameters.
template <typename Scalar>
struct PhiOperatorT {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> matrix;
  int scaling_steps = 0;
  int series_terms = 0;
};

using PhiOperator = PhiOperatorT<double>;

namespace detail {

template <typename Matrix>
int scaling_steps_for(const Matrix& a) {
  // Spectral norm; n is small so the exact value is cheap and makes the
  // "series converges after scaling" invariant airtight.
  const double norm = Eigen::JacobiSVD<Matrix>(a).singularValues()(0);
  int s = 0;
  double scaled = norm;
  while (scaled > 1.0) {
    scaled *= 0.5;
    ++s;
  }
  return s;
}

}  // namespace detail

/// e^{-A} by scaling, truncated Taylor, and repeated squaring.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> exp_neg(
    const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (a.rows() != a.cols()) throw std::invalid_argument("exp_neg: matrix must be square");
  const Eigen::Index n = a.rows();
  const Matrix am = a;
  const int s = detail::scaling_steps_for(am);
  const Matrix b = am / std::ldexp(1.0, s);

  Matrix e = Matrix::Identity(n, n);
  Matrix term = Matrix::Identity(n, n);
  for (int k = 1; k <= 25; ++k) {
    term = (term * (-b) / static_cast<double>(k)).eval();
    e += term;
    if (term.norm() <= 1e-18 * e.norm()) break;
  }
  for (int i = 0; i < s; ++i) e = (e * e).eval();
  return e;
}

/// phi(A) via scaling + Taylor + doubling. With B = A/2^s and ||B|| <= 1,
/// phi(B) and e^{-B} come from one shared Taylor loop, then
///   phi(2B) = phi(B) (I + e^{-B}) / 2,   e^{-2B} = (e^{-B})^2
/// undo the scaling. Exact identity at A = 0: phi(0) = I.
template <typename Derived>
PhiOperatorT<typename Derived::Scalar> phi_matrix(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (a.rows() != a.cols()) throw std::invalid_argument("phi_matrix: matrix must be square");
  const Eigen::Index n = a.rows();
  const Matrix am = a;

  PhiOperatorT<Scalar> result;
  result.scaling_steps = detail::scaling_steps_for(am);
  const Matrix b = am / std::ldexp(1.0, result.scaling_steps);

  Matrix p = Matrix::Identity(n, n);  // phi(B) accumulator
  Matrix e = Matrix::Identity(n, n);  // e^{-B} accumulator
  Matrix term = Matrix::Identity(n, n);
  int terms = 0;
  for (int k = 1; k <= 25; ++k) {
    term = (term * (-b) / static_cast<double>(k)).eval();
    e += term;
    p += term / static_cast<double>(k + 1);
    terms = k;
    if (term.norm() <= 1e-18 * std::max(e.norm(), p.norm())) break;
  }
  result.series_terms = terms;

  for (int i = 0; i < result.scaling_steps; ++i) {
    p = (0.5 * p * (Matrix::Identity(n, n) + e)).eval();
    e = (e * e).eval();
  }
  result.matrix = std::move(p);
  return result;
}

namespace detail {

/// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_m.
inline void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(m, 0.0);
  weights.assign(m, 0.0);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[m - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[m - 1 - i] = w;
  }
}

/// Self-contained e^{-A}: Frobenius-scaled Taylor with squaring. Kept apart
/// from exp_neg so the quadrature route shares no code with the phi engine
/// it cross-checks.
inline Eigen::MatrixXd quadrature_exp_neg(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  int s = 0;
  double norm = a.norm();
  while (norm > 0.5) {
    norm *= 0.5;
    ++s;
  }
  const Eigen::MatrixXd b = a / std::ldexp(1.0, s);
  Eigen::MatrixXd e = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  for (int k = 1; k <= 30; ++k) {
    term = (term * (-b) / static_cast<double>(k)).eval();
    e += term;
    if (term.norm() <= 1e-18 * e.norm()) break;
  }
  for (int i = 0; i < s; ++i) e = (e * e).eval();
  return e;
}

}  // namespace detail

/// Independent evaluation of phi(A) through the integral
/// phi(A) = int_0^1 e^{-tA} dt, by Gauss-Legendre quadrature with node
/// doubling until ||Q_2m - Q_m|| <= 1e-11 (1 + ||Q_2m||).
inline Eigen::MatrixXd phi_quadrature(const Eigen::Ref<const Eigen::MatrixXd>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("phi_quadrature: matrix must be square");
  const Eigen::Index n = a.rows();
  std::vector<double> nodes, weights;
  Eigen::MatrixXd prev;
  for (int m = 8; m <= 512; m *= 2) {
    detail::gauss_legendre(m, nodes, weights);
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < m; ++i) {
      const double t = 0.5 * (nodes[i] + 1.0);
      q += 0.5 * weights[i] * detail::quadrature_exp_neg(t * a);
    }
    if (prev.size() > 0 && (q - prev).norm() <= 1e-11 * (1.0 + q.norm())) return q;
    prev = std::move(q);
  }
  return prev;
}

}  // namespace dexpnorm
