#include "dexpnorm/algebra_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>
#include <utility>

namespace dexpnorm {

namespace {

using nlohmann::json;

void reject_unknown_fields(const json& obj, std::initializer_list<const char*> allowed,
                           const std::string& where) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) {
        known = true;
        break;
      }
    if (!known) throw ParseError("unknown field '" + item.key() + "' in " + where);
  }
}

int require_int(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ParseError("missing field '" + std::string(key) + "' in " + where);
  if (!j[key].is_number_integer())
    throw ParseError("field '" + std::string(key) + "' in " + where + " must be an integer");
  return j[key].get<int>();
}

int parse_index_key(const std::string& key, int dim, const std::string& where) {
  std::size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(key, &pos);
  } catch (const std::exception&) {
    throw ParseError("coefficient key '" + key + "' in " + where + " is not an integer index");
  }
  if (pos != key.size())
    throw ParseError("coefficient key '" + key + "' in " + where + " is not an integer index");
  if (value < 0 || value >= dim)
    throw ParseError("coefficient index " + key + " out of range [0, " + std::to_string(dim) +
                     ") in " + where);
  return value;
}

}  // namespace

AlgebraFile parse_algebra_json(const json& j) {
  if (!j.is_object()) throw ParseError("algebra file must be a JSON object");
  reject_unknown_fields(j, {"name", "dim", "brackets", "gram"}, "algebra file");

  AlgebraFile file;
  if (!j.contains("name") || !j["name"].is_string())
    throw ParseError("algebra file requires a string 'name'");
  file.name = j["name"].get<std::string>();

  const int dim = require_int(j, "dim", "algebra file");
  if (dim < 1) throw ParseError("'dim' must be a positive integer");
  file.sc = StructureConstants(dim);

  if (!j.contains("brackets") || !j["brackets"].is_array())
    throw ParseError("algebra file requires an array 'brackets'");
  std::set<std::pair<int, int>> seen;
  for (const json& entry : j["brackets"]) {
    if (!entry.is_object()) throw ParseError("each bracket must be an object");
    reject_unknown_fields(entry, {"i", "j", "coeffs"}, "bracket entry");
    const int i = require_int(entry, "i", "bracket entry");
    const int jj = require_int(entry, "j", "bracket entry");
    if (i < 0 || jj < 0 || i >= dim || jj >= dim)
      throw ParseError("bracket indices (" + std::to_string(i) + ", " + std::to_string(jj) +
                       ") out of range");
    if (i >= jj)
      throw ParseError("bracket entries must have i < j (antisymmetric completion is implicit)");
    if (!seen.insert({i, jj}).second)
      throw ParseError("duplicate bracket entry for (i=" + std::to_string(i) +
                       ", j=" + std::to_string(jj) + ")");
    if (!entry.contains("coeffs") || !entry["coeffs"].is_object())
      throw ParseError("bracket entry requires an object 'coeffs'");
    for (const auto& coeff : entry["coeffs"].items()) {
      const int k = parse_index_key(coeff.key(), dim, "bracket coeffs");
      if (!coeff.value().is_number())
        throw ParseError("coefficient for k=" + coeff.key() + " must be a number");
      file.sc.set_bracket(i, jj, k, coeff.value().get<double>());
    }
  }

  if (j.contains("gram")) {
    if (!j["gram"].is_array() || j["gram"].size() != static_cast<std::size_t>(dim) * dim)
      throw ParseError("'gram' must be a flat row-major array of dim*dim numbers");
    Eigen::MatrixXd g(dim, dim);
    std::size_t idx = 0;
    for (const json& v : j["gram"]) {
      if (!v.is_number()) throw ParseError("'gram' entries must be numbers");
      g(static_cast<Eigen::Index>(idx / dim), static_cast<Eigen::Index>(idx % dim)) =
          v.get<double>();
      ++idx;
    }
    file.gram = std::move(g);
  }
  return file;
}

AlgebraFile parse_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("malformed JSON in " + path + ": " + e.what());
  }
  return parse_algebra_json(j);
}

LieAlgebra load_algebra(const std::string& path) {
  AlgebraFile file = parse_algebra_file(path);
  if (file.gram)
    return LieAlgebra(file.name, std::move(file.sc), InnerProduct{std::move(*file.gram)});
  return LieAlgebra(file.name, std::move(file.sc));
}

json algebra_to_json(const LieAlgebra& alg) {
  const int n = alg.dim();
  json j;
  j["name"] = alg.name();
  j["dim"] = n;
  json brackets = json::array();
  for (int i = 0; i < n; ++i)
    for (int jj = i + 1; jj < n; ++jj) {
      json coeffs = json::object();
      for (int k = 0; k < n; ++k)
        if (alg.structure()(i, jj, k) != 0.0)
          coeffs[std::to_string(k)] = alg.structure()(i, jj, k);
      if (!coeffs.empty()) brackets.push_back({{"i", i}, {"j", jj}, {"coeffs", coeffs}});
    }
  j["brackets"] = std::move(brackets);
  if (!alg.gram_is_identity()) {
    json gram = json::array();
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) gram.push_back(alg.inner_product().gram(r, c));
    j["gram"] = std::move(gram);
  }
  return j;
}

}  // namespace dexpnorm
