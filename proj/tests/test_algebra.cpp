#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>

#include "dexpnorm/algebra.hpp"
#include "dexpnorm/algebra_io.hpp"
#include "dexpnorm/catalog.hpp"
#include "dexpnorm/rng.hpp"
#include "dexpnorm/spectral.hpp"
#include "oracle_values.hpp"

using namespace dexpnorm;
using nlohmann::json;

namespace {

StructureConstants heis3_sc() {
  StructureConstants sc(3);
  sc.set_bracket(0, 1, 2, 1.0);
  return sc;
}

std::string write_temp(const json& j) {
  static int counter = 0;
  std::string path = "test_algebra_tmp_" + std::to_string(counter++) + ".json";
  std::ofstream out(path);
  out << j.dump(2);
  return path;
}

}  // namespace

TEST_CASE("validate: abelian and h3 pass, corrupted h3 fails") {
  CHECK(validate(StructureConstants(4)).ok());
  CHECK(validate(heis3_sc()).ok());

  StructureConstants broken = heis3_sc();
  broken.set_raw(1, 0, 2, 1.0);  // breaks antisymmetry: c(0,1,2) + c(1,0,2) = 2
  const ValidationReport report = validate(broken);
  REQUIRE_FALSE(report.ok());
  bool found = false;
  for (const auto& issue : report.issues)
    if (issue.kind == ValidationIssue::Kind::antisymmetry && issue.i == 0 && issue.j == 1 &&
        issue.k == 2 && issue.residual == doctest::Approx(2.0))
      found = true;
  CHECK(found);
}

TEST_CASE("validate: broken Jacobi is reported with indices") {
  // [e0,e1] = e1, [e0,e2] = e2, [e1,e2] = e0 violates Jacobi.
  StructureConstants sc(3);
  sc.set_bracket(0, 1, 1, 1.0);
  sc.set_bracket(0, 2, 2, 1.0);
  sc.set_bracket(1, 2, 0, 1.0);
  const ValidationReport report = validate(sc);
  REQUIRE_FALSE(report.ok());
  CHECK(report.issues.front().kind == ValidationIssue::Kind::jacobi);
  CHECK(report.issues.front().l >= 0);
}

TEST_CASE("ad matrices read off the structure constants") {
  const LieAlgebra& heis3 = catalog_entry("heis3").algebra;
  const AdOperator op = ad(heis3, Eigen::Vector3d(1, 0, 0));
  CHECK(op.matrix(2, 1) == 1.0);
  CHECK(op.matrix.cwiseAbs().sum() == 1.0);  // single nonzero entry
  CHECK(op.norm_x == 1.0);
  CHECK((op.unit - op.matrix).norm() == 0.0);

  const LieAlgebra& sl2 = catalog_entry("sl2").algebra;
  const AdOperator ad_h = ad(sl2, Eigen::Vector3d(1, 0, 0));
  CHECK(ad_h.matrix(1, 1) == 2.0);
  CHECK(ad_h.matrix(2, 2) == -2.0);
  CHECK(ad_h.matrix(0, 0) == 0.0);
  CHECK(ad_h.matrix.cwiseAbs().sum() == 4.0);

  const LieAlgebra& abelian = catalog_entry("abelian3").algebra;
  CHECK(ad(abelian, Eigen::Vector3d(0.3, -2.0, 5.0)).matrix.isZero(0.0));
}

TEST_CASE("ad is linear and kills its own argument") {
  Rng rng(101);
  for (const CatalogEntry& entry : catalog()) {
    const LieAlgebra& alg = entry.algebra;
    for (int trial = 0; trial < 1000; ++trial) {
      const Eigen::VectorXd x = rng.gaussian_vector(alg.dim());
      const Eigen::VectorXd y = rng.gaussian_vector(alg.dim());
      const double alpha = rng.uniform(-3.0, 3.0);
      const AdOperator ox = ad(alg, x);

      const Eigen::MatrixXd lin = ad(alg, (alpha * x + y).eval()).matrix;
      CHECK((lin - alpha * ox.matrix - ad(alg, y).matrix).cwiseAbs().maxCoeff() <= 1e-12);

      const double scale = ox.matrix.norm() * ox.norm_x;
      CHECK((ox.matrix * alg.to_ortho(x)).norm() <= 1e-12 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("delta_zero two-sided estimates") {
  SUBCASE("abelian: exactly zero") {
    const DeltaZeroEstimate est = delta_zero(catalog_entry("abelian3").algebra, 100);
    CHECK(est.lower == 0.0);
    CHECK(est.upper == 0.0);
    CHECK(est.converged);
  }
  SUBCASE("h3: lower converges to 1, certificate sqrt(2)") {
    const DeltaZeroEstimate est = delta_zero(catalog_entry("heis3").algebra, 400);
    CHECK(est.lower == doctest::Approx(oracle::kDelta0LowerHeis3).epsilon(1e-6));
    CHECK(est.upper == doctest::Approx(oracle::kDelta0CertHeis3).epsilon(1e-12));
    CHECK(est.lower <= est.upper);
  }
  SUBCASE("sl2: lower converges to 2, certificate sqrt(18)") {
    const DeltaZeroEstimate est = delta_zero(catalog_entry("sl2").algebra, 600);
    CHECK(est.lower >= oracle::kDelta0LowerSl2 - 1e-6);
    CHECK(est.lower <= oracle::kDelta0LowerSl2 + 1e-9);
    CHECK(est.upper == doctest::Approx(oracle::kDelta0CertSl2).epsilon(1e-12));
  }
  SUBCASE("so3 certificate") {
    CHECK(delta_zero(catalog_entry("so3").algebra, 200).upper ==
          doctest::Approx(oracle::kDelta0CertSo3).epsilon(1e-12));
  }
  SUBCASE("zero budget is an error") {
    CHECK_THROWS_AS(delta_zero(catalog_entry("heis3").algebra, 0), std::invalid_argument);
  }
}

TEST_CASE("sampled operator norms never exceed the certificate") {
  Rng rng(211);
  for (const CatalogEntry& entry : catalog()) {
    const LieAlgebra& alg = entry.algebra;
    const double upper = delta_zero(alg, 300).upper;
    for (int trial = 0; trial < 1000; ++trial) {
      const Eigen::VectorXd x = rng.gaussian_vector(alg.dim());
      const AdOperator op = ad(alg, x);
      CHECK(singular_values(op.matrix)(0) <= upper * op.norm_x + 1e-9);
    }
  }
}

TEST_CASE("non-identity Gram matrix: orthonormal coordinates behave") {
  // h3 with a stretched, correlated metric.
  Eigen::Matrix3d gram;
  gram << 4.0, 1.0, 0.0, 1.0, 2.0, 0.5, 0.0, 0.5, 1.5;
  const LieAlgebra alg("heis3_gram", heis3_sc(), InnerProduct{gram});

  SUBCASE("round trip is the identity") {
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
      const Eigen::VectorXd x = rng.gaussian_vector(3);
      const Eigen::VectorXd back = alg.from_ortho(alg.to_ortho(x));
      CHECK((back - x).norm() <= 1e-12 * std::max(1.0, x.norm()));
    }
  }
  SUBCASE("orthonormalized constants satisfy the identities") {
    CHECK(validate(alg.structure_ortho()).ok());
  }
  SUBCASE("norm comes from the Gram matrix") {
    const Eigen::Vector3d x(1.0, -2.0, 0.5);
    CHECK(alg.norm(x) == doctest::Approx(std::sqrt(x.dot(gram * x))).epsilon(1e-14));
  }
  SUBCASE("ad still kills its argument in orthonormal coordinates") {
    Rng rng(4);
    for (int trial = 0; trial < 200; ++trial) {
      const Eigen::VectorXd x = rng.gaussian_vector(3);
      const AdOperator op = ad(alg, x);
      CHECK((op.matrix * alg.to_ortho(x)).norm() <=
            1e-12 * std::max(1.0, op.matrix.norm() * op.norm_x));
    }
  }
}

TEST_CASE("inner product rejections") {
  CHECK_THROWS_AS(InnerProduct{(Eigen::MatrixXd(2, 2) << 1, 0.5, 0, 1).finished()}.check(),
                  std::invalid_argument);  // not symmetric
  CHECK_THROWS_AS(InnerProduct{(Eigen::MatrixXd(2, 2) << 1, 2, 2, 1).finished()}.check(),
                  std::invalid_argument);  // indefinite
  CHECK_THROWS_AS(LieAlgebra("bad", heis3_sc(), InnerProduct{Eigen::MatrixXd::Identity(4, 4)}),
                  std::invalid_argument);  // dimension mismatch
}

TEST_CASE("algebra JSON: load, reject, round trip") {
  SUBCASE("valid file loads") {
    const json j = {{"name", "heis3"},
                    {"dim", 3},
                    {"brackets", json::array({{{"i", 0}, {"j", 1}, {"coeffs", {{"2", 1.0}}}}})}};
    const std::string path = write_temp(j);
    const LieAlgebra alg = load_algebra(path);
    CHECK(alg.dim() == 3);
    CHECK(alg.structure()(0, 1, 2) == 1.0);
    CHECK(alg.structure()(1, 0, 2) == -1.0);
    std::remove(path.c_str());
  }
  SUBCASE("unknown top-level field is rejected") {
    const json j = {{"name", "x"}, {"dim", 1}, {"brackets", json::array()}, {"extra", 1}};
    CHECK_THROWS_AS(parse_algebra_json(j), ParseError);
  }
  SUBCASE("unknown bracket field is rejected") {
    const json j = {{"name", "x"},
                    {"dim", 2},
                    {"brackets",
                     json::array({{{"i", 0}, {"j", 1}, {"coeffs", json::object()}, {"w", 2}}})}};
    CHECK_THROWS_AS(parse_algebra_json(j), ParseError);
  }
  SUBCASE("i >= j is rejected") {
    const json j = {{"name", "x"},
                    {"dim", 2},
                    {"brackets", json::array({{{"i", 1}, {"j", 0}, {"coeffs", {{"0", 1.0}}}}})}};
    CHECK_THROWS_AS(parse_algebra_json(j), ParseError);
  }
  SUBCASE("coefficient index out of range is rejected") {
    const json j = {{"name", "x"},
                    {"dim", 2},
                    {"brackets", json::array({{{"i", 0}, {"j", 1}, {"coeffs", {{"7", 1.0}}}}})}};
    CHECK_THROWS_AS(parse_algebra_json(j), ParseError);
  }
  SUBCASE("gram of the wrong size is rejected") {
    const json j = {{"name", "x"},
                    {"dim", 2},
                    {"brackets", json::array()},
                    {"gram", json::array({1.0, 0.0, 1.0})}};
    CHECK_THROWS_AS(parse_algebra_json(j), ParseError);
  }
  SUBCASE("round trip through algebra_to_json") {
    for (const CatalogEntry& entry : catalog()) {
      const AlgebraFile file = parse_algebra_json(algebra_to_json(entry.algebra));
      CHECK(file.name == entry.algebra.name());
      CHECK(file.sc.dim() == entry.algebra.dim());
      for (int i = 0; i < file.sc.dim(); ++i)
        for (int j = 0; j < file.sc.dim(); ++j)
          for (int k = 0; k < file.sc.dim(); ++k)
            CHECK(file.sc(i, j, k) == entry.algebra.structure()(i, j, k));
    }
  }
}
