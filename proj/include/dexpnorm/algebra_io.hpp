#pragma once

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <stdexcept>
#include <string>

#include "dexpnorm/algebra.hpp"

namespace dexpnorm {

/// Malformed input file (bad JSON, wrong types, unknown fields, index range
/// errors). Distinct from validation failures, which are reported, not thrown.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raw contents of an algebra file, before any validation:
///   { "name": str, "dim": n,
///     "brackets": [ {"i": int, "j": int, "coeffs": {"k": real, ...}}, ... ],
///     "gram": optional flat n*n row-major array }
/// Only i < j pairs may be listed; the antisymmetric completion is implied.
/// Unknown fields are rejected.
struct AlgebraFile {
  std::string name;
  StructureConstants sc;
  std::optional<Eigen::MatrixXd> gram;
};

AlgebraFile parse_algebra_json(const nlohmann::json& j);
AlgebraFile parse_algebra_file(const std::string& path);

/// Parse + validate + construct. Throws ParseError on malformed input and
/// std::invalid_argument when the algebra fails validation.
LieAlgebra load_algebra(const std::string& path);

nlohmann::json algebra_to_json(const LieAlgebra& alg);

}  // namespace dexpnorm
