#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "dexpnorm/algebra.hpp"
#include "dexpnorm/algebra_io.hpp"
#include "dexpnorm/bounds.hpp"
#include "dexpnorm/catalog.hpp"
#include "dexpnorm/suites.hpp"

namespace {

using dexpnorm::BoundOptions;
using dexpnorm::BoundReport;
using dexpnorm::LieAlgebra;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;   // validation / suite failures
constexpr int kExitUsage = 2;     // parse errors, bad arguments, shape mismatches

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// RFC-4180 quoting; numeric cells never need it, names might.
std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t used = 0;
    out.push_back(std::stod(item, &used));
    if (used != item.size()) throw std::invalid_argument("bad vector component: " + item);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

/// Catalog id or a path to an algebra JSON file.
LieAlgebra resolve_algebra(const std::string& spec) {
  if (dexpnorm::has_catalog_entry(spec)) return dexpnorm::catalog_entry(spec).algebra;
  return dexpnorm::load_algebra(spec);
}

BoundOptions parse_tol_overrides(const std::vector<std::string>& overrides) {
  BoundOptions opts;
  for (const std::string& item : overrides) {
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--tol-overrides entries must look like key=value");
    const std::string key = item.substr(0, eq);
    const double value = std::stod(item.substr(eq + 1));
    if (key == "kappa-tol")
      opts.kappa_tol = value;
    else if (key == "eig-zero")
      opts.eig_zero_tol = value;
    else
      throw std::invalid_argument("unknown tolerance key '" + key +
                                  "' (known: kappa-tol, eig-zero)");
  }
  return opts;
}

json bound_report_to_json(const BoundReport& r) {
  json j;
  j["algebra"] = r.algebra;
  j["x"] = std::vector<double>(r.x.data(), r.x.data() + r.x.size());
  j["x_norm"] = r.x_norm;
  j["p_nonzero"] = r.p_nonzero;
  j["delta0_upper"] = r.delta0_upper;
  j["exact_min"] = r.exact_min;
  j["exact_max"] = r.exact_max;
  j["lambda_tilde_min"] = r.lambda_tilde_min;
  j["lambda_tilde_max"] = r.lambda_tilde_max;
  if (r.thm1) {
    j["thm1_lower"] = r.thm1->lower;
    j["thm1_upper"] = r.thm1->upper;
    j["thm1_C"] = r.thm1->C;
    j["thm1_D"] = r.thm1->D;
    j["kappa"] = r.thm1->kappa;
  }
  j["thm2_lower"] = r.thm2.lower;
  j["thm2_lower_log"] = r.thm2.lower_log;
  j["thm2_upper"] = r.thm2.upper;
  if (r.nilp) {
    j["nilp_p_step"] = r.nilp->p_step;
    j["nilp_lower"] = r.nilp->lower;
    j["nilp_upper"] = r.nilp->upper;
    j["nilp_lower_log"] = r.nilp->lower_log;
  }
  return j;
}

const char* kSweepHeader =
    "t,exact_min,exact_max,lambda_tilde_min,lambda_tilde_max,thm1_lower,thm1_upper,"
    "thm2_lower_log,thm2_upper,nilp_lower,nilp_upper";

/// One CSV row; not-applicable cells stay empty rather than 0.
std::string sweep_row(double t, const BoundReport& r) {
  std::string row = fmt17(t);
  auto add = [&row](double v) { row += "," + fmt17(v); };
  auto add_empty = [&row]() { row += ","; };
  add(r.exact_min);
  add(r.exact_max);
  add(r.lambda_tilde_min);
  add(r.lambda_tilde_max);
  if (r.thm1) {
    add(r.thm1->lower);
    add(r.thm1->upper);
  } else {
    add_empty();
    add_empty();
  }
  add(r.thm2.lower_log);
  add(r.thm2.upper);
  if (r.nilp) {
    add(r.nilp->lower);
    add(r.nilp->upper);
  } else {
    add_empty();
    add_empty();
  }
  return row;
}

int cmd_validate(const std::string& path, bool as_json) {
  dexpnorm::AlgebraFile file;
  try {
    file = dexpnorm::parse_algebra_file(path);
  } catch (const dexpnorm::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  }
  dexpnorm::ValidationReport report = dexpnorm::validate(file.sc);
  std::string gram_error;
  if (file.gram) {
    try {
      dexpnorm::InnerProduct{*file.gram}.check();
    } catch (const std::invalid_argument& e) {
      gram_error = e.what();
    }
  }
  const bool ok = report.ok() && gram_error.empty();
  if (as_json) {
    json issues = json::array();
    for (const auto& issue : report.issues)
      issues.push_back({{"kind", issue.kind == dexpnorm::ValidationIssue::Kind::antisymmetry
                                     ? "antisymmetry"
                                     : "jacobi"},
                        {"i", issue.i},
                        {"j", issue.j},
                        {"k", issue.k},
                        {"l", issue.l},
                        {"residual", issue.residual}});
    if (!gram_error.empty()) issues.push_back({{"kind", "gram"}, {"message", gram_error}});
    std::cout << json{{"name", file.name}, {"dim", file.sc.dim()}, {"ok", ok},
                      {"issues", issues}}
                     .dump(2)
              << "\n";
  } else if (ok) {
    std::cout << "OK: '" << file.name << "' (dim " << file.sc.dim()
              << ") satisfies antisymmetry and the Jacobi identity\n";
  } else {
    std::cout << "INVALID: '" << file.name << "' (dim " << file.sc.dim() << ")\n";
    for (const auto& issue : report.issues) std::cout << "  " << issue.describe() << "\n";
    if (!gram_error.empty()) std::cout << "  " << gram_error << "\n";
  }
  return ok ? kExitOk : kExitFailure;
}

int cmd_info(const std::string& spec, bool as_json, int delta0_budget) {
  const LieAlgebra alg = resolve_algebra(spec);
  const dexpnorm::DeltaZeroEstimate d0 = dexpnorm::delta_zero(alg, delta0_budget);
  const bool abelian = alg.structure_ortho().all_zero();
  const std::optional<int> nilstep = dexpnorm::sampled_nilpotency_step(alg, 50, 0xd15c0ULL);
  const bool solvable = dexpnorm::is_solvable(alg);
  if (as_json) {
    json j{{"name", alg.name()},
           {"dim", alg.dim()},
           {"gram_identity", alg.gram_is_identity()},
           {"abelian", abelian},
           {"solvable", solvable},
           {"delta0_lower", d0.lower},
           {"delta0_upper", d0.upper}};
    j["nilpotent_step"] = nilstep ? json(*nilstep) : json(nullptr);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "name:          " << alg.name() << "\n"
              << "dim:           " << alg.dim() << "\n"
              << "gram:          " << (alg.gram_is_identity() ? "identity" : "custom") << "\n"
              << "abelian:       " << (abelian ? "yes" : "no") << "\n"
              << "solvable:      " << (solvable ? "yes" : "no") << "\n"
              << "nilpotent:     "
              << (nilstep ? "yes (sampled step " + std::to_string(*nilstep) + ")" : "no") << "\n"
              << "delta0:        [" << fmt17(d0.lower) << ", " << fmt17(d0.upper) << "]\n";
  }
  return kExitOk;
}

int cmd_bounds(const std::string& spec, const std::string& x_text, bool as_csv,
               int delta0_budget, const BoundOptions& opts) {
  const LieAlgebra alg = resolve_algebra(spec);
  const std::vector<double> x_values = parse_vector(x_text);
  if (static_cast<int>(x_values.size()) != alg.dim()) {
    std::cerr << "error: x has " << x_values.size() << " components but '" << alg.name()
              << "' has dimension " << alg.dim() << "\n";
    return kExitUsage;
  }
  const Eigen::VectorXd x =
      Eigen::Map<const Eigen::VectorXd>(x_values.data(), static_cast<Eigen::Index>(x_values.size()));
  if (alg.norm(x) == 0.0) {
    std::cout << "d exp_0 is the identity: |d exp_0(y)| = 1 for every unit y\n";
    return kExitOk;
  }
  const double delta0 = dexpnorm::delta_zero(alg, delta0_budget).upper;
  const BoundReport report = dexpnorm::bound_report(alg, x, delta0, opts);
  if (as_csv) {
    std::cout << kSweepHeader << "\n" << sweep_row(report.x_norm, report) << "\n";
  } else {
    std::cout << bound_report_to_json(report).dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_sweep(const std::string& spec, const std::string& x_text, double t_min, double t_max,
              int steps, const std::string& scale, int delta0_budget, const BoundOptions& opts) {
  const LieAlgebra alg = resolve_algebra(spec);
  const std::vector<double> x_values = parse_vector(x_text);
  if (static_cast<int>(x_values.size()) != alg.dim()) {
    std::cerr << "error: x-hat has " << x_values.size() << " components but '" << alg.name()
              << "' has dimension " << alg.dim() << "\n";
    return kExitUsage;
  }
  if (!(t_min > 0) || t_max < t_min || steps < 2) {
    std::cerr << "error: need t-min > 0, t-max >= t-min, steps >= 2\n";
    return kExitUsage;
  }
  Eigen::VectorXd x_hat =
      Eigen::Map<const Eigen::VectorXd>(x_values.data(), static_cast<Eigen::Index>(x_values.size()));
  const double norm = alg.norm(x_hat);
  if (norm == 0.0) {
    std::cerr << "error: x-hat must be nonzero\n";
    return kExitUsage;
  }
  if (std::abs(norm - 1.0) > 1e-12) {
    std::cerr << "warning: x-hat has |x| = " << fmt17(norm) << "; normalizing\n";
    x_hat /= norm;
  }
  const double delta0 = dexpnorm::delta_zero(alg, delta0_budget).upper;
  std::cout << kSweepHeader << "\n";
  for (int i = 0; i < steps; ++i) {
    const double f = static_cast<double>(i) / (steps - 1);
    const double t = scale == "log" ? t_min * std::pow(t_max / t_min, f)
                                    : t_min + f * (t_max - t_min);
    const BoundReport report = dexpnorm::bound_report(alg, (t * x_hat).eval(), delta0, opts);
    std::cout << sweep_row(t, report) << "\n";
  }
  return kExitOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int trials,
               const std::vector<std::string>& algebras) {
  if (!dexpnorm::is_suite(suite)) {
    std::cerr << "error: unknown suite '" << suite << "'\nknown suites:";
    for (const std::string& name : dexpnorm::suite_names()) std::cerr << " " << name;
    std::cerr << "\n";
    return kExitUsage;
  }
  const dexpnorm::PropertyRunReport report = dexpnorm::run_suite(suite, seed, trials, algebras);
  std::cout << dexpnorm::report_to_json(report).dump(2) << "\n";
  return report.failures.empty() ? kExitOk : kExitFailure;
}

int cmd_catalog(bool as_json) {
  if (as_json) {
    json out = json::array();
    for (const auto& entry : dexpnorm::catalog()) {
      json traits = json::array();
      if (entry.abelian) traits.push_back("abelian");
      if (entry.nilpotent_step > 0)
        traits.push_back("nilpotent(" + std::to_string(entry.nilpotent_step) + ")");
      if (entry.solvable) traits.push_back("solvable");
      if (entry.semisimple) traits.push_back("semisimple");
      if (entry.compact_type) traits.push_back("compact-type");
      out.push_back({{"id", entry.id}, {"dim", entry.algebra.dim()}, {"traits", traits}});
    }
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "id,dim,traits\n";
    for (const auto& entry : dexpnorm::catalog()) {
      std::string traits;
      auto append = [&traits](const std::string& s) {
        if (!traits.empty()) traits += " ";
        traits += s;
      };
      if (entry.abelian) append("abelian");
      if (entry.nilpotent_step > 0)
        append("nilpotent(" + std::to_string(entry.nilpotent_step) + ")");
      if (entry.solvable) append("solvable");
      if (entry.semisimple) append("semisimple");
      if (entry.compact_type) append("compact-type");
      std::cout << csv_quote(entry.id) << "," << entry.algebra.dim() << ","
                << csv_quote(traits) << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extremal norms of the differential of the Lie exponential map:\n"
               "exact singular-value extremes of (1 - e^{-ad_x})/ad_x plus every\n"
               "eigenvalue-, bracket-norm-, and nilpotency-based bound on them."};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  bool flag_json = false, flag_csv = false;
  std::vector<std::string> tol_overrides;
  app.add_option("--seed", seed, "Seed for randomized suites");
  app.add_flag("--json", flag_json, "Emit JSON");
  app.add_flag("--csv", flag_csv, "Emit CSV");
  app.add_option("--tol-overrides", tol_overrides,
                 "key=value tolerance overrides (kappa-tol, eig-zero)");

  auto* validate_cmd = app.add_subcommand("validate", "Check an algebra file");
  std::string validate_path;
  validate_cmd->add_option("path", validate_path, "Algebra JSON file")->required();

  auto* info_cmd = app.add_subcommand("info", "Summarize an algebra");
  std::string info_spec;
  int info_budget = 400;
  info_cmd->add_option("algebra", info_spec, "Catalog id or file path")->required();
  info_cmd->add_option("--delta0-budget", info_budget, "Sampling budget for delta0");

  auto* bounds_cmd = app.add_subcommand("bounds", "Bound report at one point");
  std::string bounds_spec, bounds_x;
  int bounds_budget = 400;
  bounds_cmd->add_option("algebra", bounds_spec, "Catalog id or file path")->required();
  bounds_cmd->add_option("--x", bounds_x, "Comma-separated coefficients in the input basis")
      ->required();
  bounds_cmd->add_option("--delta0-budget", bounds_budget, "Sampling budget for delta0");

  auto* sweep_cmd = app.add_subcommand("sweep", "Bound report along a ray, CSV");
  std::string sweep_spec, sweep_x, sweep_scale = "linear";
  double sweep_tmin = 1.0, sweep_tmax = 10.0;
  int sweep_steps = 50, sweep_budget = 400;
  sweep_cmd->add_option("algebra", sweep_spec, "Catalog id or file path")->required();
  sweep_cmd->add_option("--x-hat", sweep_x, "Ray direction in the input basis")->required();
  sweep_cmd->add_option("--t-min", sweep_tmin, "Smallest |x| (> 0)");
  sweep_cmd->add_option("--t-max", sweep_tmax, "Largest |x|");
  sweep_cmd->add_option("--steps", sweep_steps, "Grid size (>= 2)");
  sweep_cmd->add_option("--scale", sweep_scale, "linear|log")
      ->check(CLI::IsMember({"linear", "log"}));
  sweep_cmd->add_option("--delta0-budget", sweep_budget, "Sampling budget for delta0");

  auto* verify_cmd = app.add_subcommand("verify", "Run a property suite");
  std::string verify_suite;
  int verify_trials = 200;
  std::vector<std::string> verify_algebras;
  verify_cmd->add_option("suite", verify_suite, "Suite id")->required();
  verify_cmd->add_option("--trials", verify_trials, "Draws per applicable algebra");
  verify_cmd->add_option("--algebra", verify_algebras,
                         "Restrict to these catalog ids (repeatable)");

  auto* catalog_cmd = app.add_subcommand("catalog", "List built-in algebras");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const BoundOptions opts = parse_tol_overrides(tol_overrides);
    if (validate_cmd->parsed()) return cmd_validate(validate_path, flag_json);
    if (info_cmd->parsed()) return cmd_info(info_spec, flag_json, info_budget);
    if (bounds_cmd->parsed())
      return cmd_bounds(bounds_spec, bounds_x, flag_csv, bounds_budget, opts);
    if (sweep_cmd->parsed())
      return cmd_sweep(sweep_spec, sweep_x, sweep_tmin, sweep_tmax, sweep_steps, sweep_scale,
                       sweep_budget, opts);
    if (verify_cmd->parsed()) return cmd_verify(verify_suite, seed, verify_trials, verify_algebras);
    if (catalog_cmd->parsed()) return cmd_catalog(flag_json);
  } catch (const dexpnorm::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}
