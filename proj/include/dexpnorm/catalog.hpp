#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dexpnorm/algebra.hpp"

namespace dexpnorm {

/// Closed-form spectral data carried by an entry for use as test goldens.
struct KnownFacts {
  std::optional<Eigen::VectorXd> reference_x;
  std::vector<std::complex<double>> reference_unit_eigs;
  std::optional<double> golden_min;  // extremes of |d exp_x(y)| at reference_x
  std::optional<double> golden_max;
};

struct CatalogEntry {
  std::string id;
  LieAlgebra algebra;
  bool abelian = false;
  int nilpotent_step = 0;  // 0 when not nilpotent; the algebra's step otherwise
  bool solvable = false;
  bool semisimple = false;
  bool compact_type = false;
  KnownFacts known;
};

/// Built-in algebras: abelian R^1..R^4, Heisenberg h3 and h5, sl2(R), so(3),
/// the step-3 strictly-upper-triangular n4, the solvable aff(1), and h3 + R.
/// Traits are re-verified when the catalog is first built; a mismatch throws.
const std::vector<CatalogEntry>& catalog();

/// Lookup by id; throws std::out_of_range for unknown ids.
const CatalogEntry& catalog_entry(const std::string& id);

bool has_catalog_entry(const std::string& id);

// Trait probes (exposed for the test suites).

/// Largest per-direction nilpotency step seen over `samples` random unit x;
/// nullopt if some sampled ad_x is not nilpotent.
std::optional<int> sampled_nilpotency_step(const LieAlgebra& alg, int samples,
                                           std::uint64_t seed);

/// Derived series reaches zero (ranks via column pivoted QR).
bool is_solvable(const LieAlgebra& alg);

/// Killing form B(x, y) = tr(ad_x ad_y) in orthonormal coordinates.
Eigen::MatrixXd killing_form(const LieAlgebra& alg);

}  // namespace dexpnorm
