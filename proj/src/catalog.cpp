#include "dexpnorm/catalog.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dexpnorm/bounds.hpp"
#include "dexpnorm/rng.hpp"

namespace dexpnorm {

namespace {

StructureConstants abelian_sc(int n) { return StructureConstants(n); }

StructureConstants heis3_sc() {
  StructureConstants sc(3);
  sc.set_bracket(0, 1, 2, 1.0);
  return sc;
}

StructureConstants heis5_sc() {
  StructureConstants sc(5);
  sc.set_bracket(0, 1, 4, 1.0);
  sc.set_bracket(2, 3, 4, 1.0);
  return sc;
}

StructureConstants sl2_sc() {
  // Basis (H, E, F): [H,E] = 2E, [H,F] = -2F, [E,F] = H.
  StructureConstants sc(3);
  sc.set_bracket(0, 1, 1, 2.0);
  sc.set_bracket(0, 2, 2, -2.0);
  sc.set_bracket(1, 2, 0, 1.0);
  return sc;
}

StructureConstants so3_sc() {
  StructureConstants sc(3);
  sc.set_bracket(0, 1, 2, 1.0);
  sc.set_bracket(1, 2, 0, 1.0);
  sc.set_bracket(2, 0, 1, 1.0);
  return sc;
}

StructureConstants n4_sc() {
  // Strictly upper-triangular 4x4 matrices; basis order
  // (E12, E13, E14, E23, E24, E34). Nonzero brackets:
  // [E12,E23]=E13, [E12,E24]=E14, [E13,E34]=E14, [E23,E34]=E24.
  StructureConstants sc(6);
  sc.set_bracket(0, 3, 1, 1.0);
  sc.set_bracket(0, 4, 2, 1.0);
  sc.set_bracket(1, 5, 2, 1.0);
  sc.set_bracket(3, 5, 4, 1.0);
  return sc;
}

StructureConstants aff1_sc() {
  StructureConstants sc(2);
  sc.set_bracket(0, 1, 1, 1.0);
  return sc;
}

StructureConstants heis3_r_sc() {
  StructureConstants sc(4);
  sc.set_bracket(0, 1, 2, 1.0);
  return sc;
}

int rank_of_span(const std::vector<Eigen::VectorXd>& vectors, int n) {
  if (vectors.empty()) return 0;
  Eigen::MatrixXd m(n, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = vectors[i];
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  qr.setThreshold(1e-10);
  return static_cast<int>(qr.rank());
}

/// Orthonormal basis of the span (thin QR of the rank-revealed columns).
Eigen::MatrixXd span_basis(const std::vector<Eigen::VectorXd>& vectors, int n) {
  const int r = rank_of_span(vectors, n);
  if (r == 0) return Eigen::MatrixXd(n, 0);
  Eigen::MatrixXd m(n, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = vectors[i];
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  qr.setThreshold(1e-10);
  Eigen::MatrixXd q = qr.householderQ();
  return q.leftCols(r);
}

void verify_entry(const CatalogEntry& entry) {
  const LieAlgebra& alg = entry.algebra;
  if (entry.abelian && !alg.structure_ortho().all_zero())
    throw std::logic_error("catalog: " + entry.id + " declared abelian but has brackets");
  if (entry.nilpotent_step > 0) {
    const std::optional<int> step = sampled_nilpotency_step(alg, 100, 0x9a7c0ffeeULL);
    if (!step || *step != entry.nilpotent_step)
      throw std::logic_error("catalog: " + entry.id + " nilpotency step mismatch");
  }
  if (entry.solvable != is_solvable(alg))
    throw std::logic_error("catalog: " + entry.id + " solvability mismatch");
  const Eigen::MatrixXd killing = killing_form(alg);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(killing, Eigen::EigenvaluesOnly);
  const double max_abs =
      std::max(std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(alg.dim() - 1)));
  double min_abs = std::numeric_limits<double>::infinity();
  for (int i = 0; i < alg.dim(); ++i) min_abs = std::min(min_abs, std::abs(es.eigenvalues()(i)));
  const bool nondegenerate = max_abs > 0 && min_abs > 1e-8 * max_abs;
  if (entry.semisimple != nondegenerate)
    throw std::logic_error("catalog: " + entry.id + " Killing-form nondegeneracy mismatch");
  if (entry.compact_type &&
      !(nondegenerate && es.eigenvalues()(alg.dim() - 1) < 0))
    throw std::logic_error("catalog: " + entry.id + " declared compact-type but Killing form "
                           "is not negative definite");
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> entries;

  for (int n = 1; n <= 4; ++n) {
    CatalogEntry e{"abelian" + std::to_string(n), LieAlgebra("abelian" + std::to_string(n),
                                                             abelian_sc(n))};
    e.abelian = true;
    e.nilpotent_step = 1;
    e.solvable = true;
    entries.push_back(std::move(e));
  }

  {
    CatalogEntry e{"heis3", LieAlgebra("heis3", heis3_sc())};
    e.nilpotent_step = 2;
    e.solvable = true;
    e.known.reference_x = Eigen::Vector3d(1, 0, 0);
    // Extremes of I - E21/2: (sqrt(17) -+ 1)/4, frozen from the 2x2
    // eigenproblem solved in closed form.
    e.known.golden_min = 0.78077640640441513746;
    e.known.golden_max = 1.2807764064044151375;
    entries.push_back(std::move(e));
  }
  {
    CatalogEntry e{"heis5", LieAlgebra("heis5", heis5_sc())};
    e.nilpotent_step = 2;
    e.solvable = true;
    entries.push_back(std::move(e));
  }
  {
    CatalogEntry e{"sl2", LieAlgebra("sl2", sl2_sc())};
    e.semisimple = true;
    e.known.reference_x = Eigen::Vector3d(1, 0, 0);
    e.known.reference_unit_eigs = {{2.0, 0.0}, {-2.0, 0.0}};
    // phi(2) and phi(-2) = (e^2 - 1)/2, high-precision scalar values.
    e.known.golden_min = 0.43233235838169365405;
    e.known.golden_max = 3.1945280494653251136;
    entries.push_back(std::move(e));
  }
  {
    CatalogEntry e{"so3", LieAlgebra("so3", so3_sc())};
    e.semisimple = true;
    e.compact_type = true;
    e.known.reference_x = Eigen::Vector3d(1, 0, 0);
    e.known.reference_unit_eigs = {{0.0, 1.0}, {0.0, -1.0}};
    entries.push_back(std::move(e));
  }
  {
    CatalogEntry e{"n4", LieAlgebra("n4", n4_sc())};
    e.nilpotent_step = 3;
    e.solvable = true;
    entries.push_back(std::move(e));
  }
  {
    CatalogEntry e{"aff1", LieAlgebra("aff1", aff1_sc())};
    e.solvable = true;
    entries.push_back(std::move(e));
  }
  {
    CatalogEntry e{"heis3_r", LieAlgebra("heis3_r", heis3_r_sc())};
    e.nilpotent_step = 2;
    e.solvable = true;
    entries.push_back(std::move(e));
  }

  for (const CatalogEntry& e : entries) verify_entry(e);
  return entries;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& id) {
  for (const CatalogEntry& e : catalog())
    if (e.id == id) return e;
  throw std::out_of_range("unknown catalog algebra: " + id);
}

bool has_catalog_entry(const std::string& id) {
  for (const CatalogEntry& e : catalog())
    if (e.id == id) return true;
  return false;
}

std::optional<int> sampled_nilpotency_step(const LieAlgebra& alg, int samples,
                                           std::uint64_t seed) {
  Rng rng(seed);
  int max_step = 0;
  for (int s = 0; s < samples; ++s) {
    const Eigen::VectorXd x = rng.unit_vector(alg.dim());
    const std::optional<int> step = nilpotency_step(ad(alg, alg.from_ortho(x)).matrix);
    if (!step) return std::nullopt;
    max_step = std::max(max_step, *step);
  }
  return max_step;
}

bool is_solvable(const LieAlgebra& alg) {
  const int n = alg.dim();
  // Derived series: D_0 = g, D_{k+1} = [D_k, D_k]; solvable iff it hits zero.
  Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(n, n);
  for (int round = 0; round <= n; ++round) {
    const int d = static_cast<int>(basis.cols());
    if (d == 0) return true;
    std::vector<Eigen::VectorXd> brackets;
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b)
        brackets.push_back(alg.structure_ortho().bracket(basis.col(a), basis.col(b)));
    const Eigen::MatrixXd next = span_basis(brackets, n);
    if (next.cols() >= basis.cols()) return false;  // stalled above zero
    basis = next;
  }
  return basis.cols() == 0;
}

Eigen::MatrixXd killing_form(const LieAlgebra& alg) {
  const int n = alg.dim();
  Eigen::MatrixXd k(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      k(a, b) = (alg.ad_basis(a) * alg.ad_basis(b)).trace();
      k(b, a) = k(a, b);
    }
  return k;
}

}  // namespace dexpnorm
