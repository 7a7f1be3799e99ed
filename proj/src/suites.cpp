#include "dexpnorm/suites.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dexpnorm/bounds.hpp"
#include "dexpnorm/catalog.hpp"
#include "dexpnorm/phi.hpp"
#include "dexpnorm/rng.hpp"
#include "dexpnorm/spectral.hpp"

namespace dexpnorm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

std::vector<double> to_std(const Eigen::MatrixXd& m) {
  return std::vector<double>(m.data(), m.data() + m.size());
}

/// Collects every checked inequality lhs <= rhs; failures keep the input
/// snapshot, and the worst signed residual per check id is aggregated even
/// when everything passes (bound slack is diagnostic).
struct Checker {
  PropertyRunReport report;

  void check(int trial, const std::string& algebra, const std::string& name, double lhs,
             double rhs, std::vector<double> x, double t,
             std::map<std::string, double> data = {}) {
    ++report.executed;
    const bool pass = lhs <= rhs;
    double residual = lhs - rhs;
    if (std::isnan(residual)) residual = pass ? 0.0 : kInf;
    auto it = report.max_residuals.find(name);
    if (it == report.max_residuals.end())
      report.max_residuals.emplace(name, residual);
    else if (residual > it->second)
      it->second = residual;
    if (!pass)
      report.failures.push_back(
          {trial, algebra, name, lhs, rhs, residual, std::move(x), t, std::move(data)});
  }
};

struct Extremes {
  double min = 1.0;
  double max = 1.0;
};

Extremes exact_extremes(const AdOperator& op) {
  const Eigen::VectorXd sv = singular_values(phi_matrix(op.matrix).matrix);
  return {sv(sv.size() - 1), sv(0)};
}

std::vector<const CatalogEntry*> select_entries(const std::vector<std::string>& ids,
                                                bool nilpotent_only) {
  std::vector<const CatalogEntry*> out;
  if (!ids.empty()) {
    for (const std::string& id : ids) out.push_back(&catalog_entry(id));
    return out;
  }
  for (const CatalogEntry& e : catalog())
    if (!nilpotent_only || e.nilpotent_step > 0) out.push_back(&e);
  return out;
}

double cached_delta0(std::map<std::string, double>& cache, const CatalogEntry& entry) {
  auto it = cache.find(entry.id);
  if (it != cache.end()) return it->second;
  const double value = delta_zero(entry.algebra, 400).upper;
  cache.emplace(entry.id, value);
  return value;
}

// ---------------------------------------------------------------------------
// Algebra-driven suites
// ---------------------------------------------------------------------------

enum class AlgebraSuite { thm1, thm2, eq5, nilpotent, corollary_decay };

void run_algebra_suite(AlgebraSuite which, Checker& checker, Rng& base, int trials,
                       const std::vector<std::string>& ids) {
  const std::vector<const CatalogEntry*> entries =
      select_entries(ids, which == AlgebraSuite::nilpotent);
  std::map<std::string, double> delta0_cache;

  std::vector<double> grid;
  if (which == AlgebraSuite::corollary_decay)
    for (int t = 1; t <= 50; ++t) grid.push_back(t);

  for (int trial = 0; trial < trials; ++trial) {
    for (std::size_t ai = 0; ai < entries.size(); ++ai) {
      const CatalogEntry& entry = *entries[ai];
      const LieAlgebra& alg = entry.algebra;
      Rng rng = base.fork(static_cast<std::uint64_t>(trial) * entries.size() + ai);

      if (which == AlgebraSuite::corollary_decay) {
        const Eigen::VectorXd x_hat = alg.from_ortho(rng.unit_vector(alg.dim()));
        const CorollaryDecay decay = corollary_decay(alg, x_hat, grid);
        if (decay.status != CorollaryDecay::Status::ok) {
          ++checker.report.skipped;
          continue;
        }
        checker.check(trial, entry.id, "corollary_positive", -decay.min_value, -1e-12,
                      to_std(x_hat), decay.witness_t);
        continue;
      }

      double t_min = 0.1, t_max = 10.0;
      if (which == AlgebraSuite::thm1) t_max = 20.0;
      if (which == AlgebraSuite::nilpotent) t_max = 50.0;
      const double t = rng.log_uniform(t_min, t_max);
      const Eigen::VectorXd x = alg.from_ortho(t * rng.unit_vector(alg.dim()));
      const AdOperator op = ad(alg, x);
      const Extremes exact = exact_extremes(op);

      switch (which) {
        case AlgebraSuite::thm1: {
          const std::optional<Thm1Bounds> b = thm1_bounds(alg, x);
          if (!b) {
            ++checker.report.skipped;
            break;
          }
          checker.check(trial, entry.id, "thm1_lower", b->lower, exact.min * (1.0 + 1e-9),
                        to_std(x), t, {{"kappa", b->kappa}});
          checker.check(trial, entry.id, "thm1_upper", exact.max, b->upper * (1.0 + 1e-9),
                        to_std(x), t, {{"kappa", b->kappa}});
          break;
        }
        case AlgebraSuite::thm2: {
          const double delta0 = cached_delta0(delta0_cache, entry);
          const Thm2Bounds b = thm2_bounds(alg, x, delta0);
          checker.check(trial, entry.id, "thm2_lower_log", b.lower_log,
                        std::log(exact.min) + 1e-9, to_std(x), t, {{"delta0", delta0}});
          checker.check(trial, entry.id, "thm2_upper", exact.max, b.upper * (1.0 + 1e-9),
                        to_std(x), t, {{"delta0", delta0}});
          break;
        }
        case AlgebraSuite::eq5: {
          const LambdaTildeExtremes ext = [&] {
            std::vector<std::complex<double>> eigs;
            const Eigen::VectorXcd ev = eigenvalues(op.unit);
            for (Eigen::Index i = 0; i < ev.size(); ++i)
              if (std::abs(ev[i]) > 1e-9) eigs.push_back(ev[i]);
            return lambda_tilde_extremes(eigs, op.norm_x);
          }();
          checker.check(trial, entry.id, "eq5_min", exact.min, ext.min + 1e-9, to_std(x), t);
          checker.check(trial, entry.id, "eq5_max", ext.max, exact.max + 1e-9, to_std(x), t);
          break;
        }
        case AlgebraSuite::nilpotent: {
          const double delta0 = cached_delta0(delta0_cache, entry);
          const std::optional<NilpotentBounds> b = nilpotent_bounds(alg, x, delta0);
          if (!b) {
            ++checker.report.skipped;
            break;
          }
          checker.check(trial, entry.id, "nilp_lower_log", b->lower_log,
                        std::log(exact.min) + 1e-9, to_std(x), t,
                        {{"p_step", static_cast<double>(b->p_step)}});
          checker.check(trial, entry.id, "nilp_upper_log", std::log(exact.max),
                        std::log(b->upper) + 1e-9, to_std(x), t,
                        {{"p_step", static_cast<double>(b->p_step)}});
          break;
        }
        case AlgebraSuite::corollary_decay:
          break;  // handled above
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Matrix-driven suites
// ---------------------------------------------------------------------------

Eigen::MatrixXd random_matrix_with_norm(Rng& rng, int n, double target_norm) {
  Eigen::MatrixXd a = rng.gaussian_matrix(n, n);
  const double s1 = singular_values(a)(0);
  if (s1 == 0.0 || target_norm == 0.0) return Eigen::MatrixXd::Zero(n, n);
  return a * (target_norm / s1);
}

void run_weyl(Checker& checker, Rng& base, int trials) {
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = base.fork(trial);
    const int n = 2 + rng.uniform_int(7);
    const Eigen::MatrixXd a = rng.gaussian_matrix(n, n);
    const Eigen::VectorXcd eigs = eigenvalues(a);
    const Eigen::VectorXd sv = singular_values(a);
    double eig_prod = 1.0, sv_prod = 1.0;
    for (int r = 0; r < n; ++r) {
      eig_prod *= std::abs(eigs(r));
      sv_prod *= sv(r);
      checker.check(trial, "", "weyl_product", eig_prod, sv_prod * (1.0 + 1e-9) + 1e-300,
                    to_std(a), static_cast<double>(r + 1));
    }
    const double det = std::abs(a.determinant());
    const double scale = std::max({det, sv_prod, 1e-300});
    checker.check(trial, "", "det_singular", std::abs(sv_prod - det), 1e-9 * scale, to_std(a),
                  static_cast<double>(n));
    checker.check(trial, "", "det_eigen", std::abs(eig_prod - det), 1e-9 * scale, to_std(a),
                  static_cast<double>(n));
  }
}

void run_spectral_mapping(Checker& checker, Rng& base, int trials) {
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = base.fork(trial);
    const int n = 2 + rng.uniform_int(7);
    Eigen::MatrixXd a;
    bool certified = false;
    for (int attempt = 0; attempt < 20 && !certified; ++attempt) {
      a = random_matrix_with_norm(rng, n, rng.uniform(0.1, 4.0));
      certified = diagonalizability(a, 1e4).diagonalizable;
    }
    if (!certified) {
      ++checker.report.skipped;
      continue;
    }
    const Eigen::VectorXcd source = eigenvalues(a);
    const Eigen::VectorXcd mapped = eigenvalues(phi_matrix(a).matrix);
    std::vector<bool> used(static_cast<std::size_t>(mapped.size()), false);
    double worst = -kInf;
    for (Eigen::Index i = 0; i < source.size(); ++i) {
      const std::complex<double> target = phi(source(i));
      const double radius = 1e-8 * (1.0 + std::abs(target));
      double best = kInf;
      Eigen::Index best_j = -1;
      for (Eigen::Index j = 0; j < mapped.size(); ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const double dist = std::abs(mapped(j) - target);
        if (dist < best) {
          best = dist;
          best_j = j;
        }
      }
      if (best_j >= 0) used[static_cast<std::size_t>(best_j)] = true;
      worst = std::max(worst, best - radius);
    }
    checker.check(trial, "", "spectral_mapping_match", worst, 0.0, to_std(a),
                  static_cast<double>(n));
  }
}

void run_phi_oracle(Checker& checker, Rng& base, int trials) {
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = base.fork(trial);
    const int n = 1 + rng.uniform_int(8);
    const Eigen::MatrixXd a = random_matrix_with_norm(rng, n, rng.uniform(0.0, 20.0));
    const Eigen::MatrixXd p = phi_matrix(a).matrix;
    const Eigen::MatrixXd q = phi_quadrature(a);
    checker.check(trial, "", "phi_quadrature_agreement", (p - q).norm(),
                  1e-8 * (1.0 + p.norm()), to_std(a), static_cast<double>(n));
    const Eigen::MatrixXd e = exp_neg(a);
    checker.check(trial, "", "phi_defining_identity",
                  (a * p - (Eigen::MatrixXd::Identity(n, n) - e)).norm(),
                  1e-10 * (1.0 + e.norm()), to_std(a), static_cast<double>(n));
  }
}

void run_lemma31(Checker& checker, Rng& base, int trials) {
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = base.fork(trial);
    const int n = 1 + rng.uniform_int(6);
    const Eigen::MatrixXd p = rng.gaussian_matrix(n, n);
    const Eigen::MatrixXd t = rng.gaussian_matrix(n, n);
    const Eigen::MatrixXd q = rng.gaussian_matrix(n, n);
    const double sn_p = singular_values(p)(n - 1);
    const double sn_t = singular_values(t)(n - 1);
    const double sn_q = singular_values(q)(n - 1);
    const double sn_ptq = singular_values((p * t * q).eval())(n - 1);
    checker.check(trial, "", "lemma31", sn_p * sn_t * sn_q - 1e-10, sn_ptq, to_std(p),
                  static_cast<double>(n));
  }
}

void run_minimax(Checker& checker, Rng& base, int trials) {
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = base.fork(trial);
    const int n = 2 + rng.uniform_int(7);
    const Eigen::MatrixXd a = random_matrix_with_norm(rng, n, rng.uniform(0.1, 5.0));
    const MinimaxReport r = minimax_check(a, 200, rng);
    checker.check(trial, "", "minimax_range", static_cast<double>(r.violations.size()), 0.0,
                  to_std(a), static_cast<double>(n),
                  {{"sampled_max", r.sampled_max}, {"sampled_min", r.sampled_min}});
    checker.check(trial, "", "minimax_refined_max", std::abs(r.refined_max - r.s1),
                  1e-8 * (1.0 + r.s1), to_std(a), static_cast<double>(n));
    checker.check(trial, "", "minimax_refined_min", std::abs(r.refined_min - r.sn),
                  1e-8 * (1.0 + r.s1), to_std(a), static_cast<double>(n));
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "thm1",    "thm2",    "eq5",     "nilpotent", "weyl",
      "spectral-mapping", "phi-oracle", "lemma31", "minimax", "corollary-decay"};
  return names;
}

bool is_suite(const std::string& id) {
  for (const std::string& name : suite_names())
    if (name == id) return true;
  return false;
}

PropertyRunReport run_suite(const std::string& suite, std::uint64_t seed, int trials,
                            const std::vector<std::string>& algebras) {
  if (!is_suite(suite)) throw std::invalid_argument("unknown suite: " + suite);
  if (trials < 1) throw std::invalid_argument("run_suite: trials must be >= 1");

  const auto start = std::chrono::steady_clock::now();
  Checker checker;
  checker.report.suite = suite;
  checker.report.seed = seed;
  checker.report.trials = trials;
  Rng base(seed);

  if (suite == "thm1")
    run_algebra_suite(AlgebraSuite::thm1, checker, base, trials, algebras);
  else if (suite == "thm2")
    run_algebra_suite(AlgebraSuite::thm2, checker, base, trials, algebras);
  else if (suite == "eq5")
    run_algebra_suite(AlgebraSuite::eq5, checker, base, trials, algebras);
  else if (suite == "nilpotent")
    run_algebra_suite(AlgebraSuite::nilpotent, checker, base, trials, algebras);
  else if (suite == "corollary-decay")
    run_algebra_suite(AlgebraSuite::corollary_decay, checker, base, trials, algebras);
  else if (suite == "weyl")
    run_weyl(checker, base, trials);
  else if (suite == "spectral-mapping")
    run_spectral_mapping(checker, base, trials);
  else if (suite == "phi-oracle")
    run_phi_oracle(checker, base, trials);
  else if (suite == "lemma31")
    run_lemma31(checker, base, trials);
  else if (suite == "minimax")
    run_minimax(checker, base, trials);

  checker.report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return checker.report;
}

nlohmann::json report_to_json(const PropertyRunReport& report, bool include_wall_ms) {
  nlohmann::json failures = nlohmann::json::array();
  for (const FailureRecord& f : report.failures) {
    nlohmann::json data = nlohmann::json::object();
    for (const auto& [key, value] : f.data) data[key] = value;
    failures.push_back({{"trial", f.trial},
                        {"algebra", f.algebra},
                        {"check", f.check},
                        {"lhs", f.lhs},
                        {"rhs", f.rhs},
                        {"residual", f.residual},
                        {"x", f.x},
                        {"t", f.t},
                        {"data", std::move(data)}});
  }
  nlohmann::json residuals = nlohmann::json::object();
  for (const auto& [key, value] : report.max_residuals) residuals[key] = value;
  return nlohmann::json{{"suite", report.suite},
                        {"seed", report.seed},
                        {"trials", report.trials},
                        {"executed", report.executed},
                        {"skipped", report.skipped},
                        {"failures", std::move(failures)},
                        {"max_residuals", std::move(residuals)},
                        {"wall_ms", include_wall_ms ? report.wall_ms : 0.0}};
}

}  // namespace dexpnorm
