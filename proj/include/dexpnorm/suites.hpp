#pragma once

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dexpnorm {

/// One failed inequality, with enough of the input snapshot to replay it.
struct FailureRecord {
  int trial = 0;
  std::string algebra;             // empty for pure matrix suites
  std::string check;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;           // lhs - rhs; positive means violated
  std::vector<double> x;           // sampled vector or flattened matrix
  double t = 0.0;
  std::map<std::string, double> data;
};

struct PropertyRunReport {
  std::string suite;
  std::uint64_t seed = 0;
  int trials = 0;     // requested; per catalog algebra for algebra-driven suites
  int executed = 0;   // inequality checks actually evaluated
  int skipped = 0;    // trials where the bound was not applicable
  std::vector<FailureRecord> failures;
  std::map<std::string, double> max_residuals;
  double wall_ms = 0.0;
};

/// Known suite ids: thm1, thm2, eq5, nilpotent, weyl, spectral-mapping,
/// phi-oracle, lemma31, minimax, corollary-decay.
const std::vector<std::string>& suite_names();

bool is_suite(const std::string& id);

/// Run one property suite. `trials` counts random draws per applicable
/// catalog algebra (or in total, for the pure matrix suites). `algebras`
/// restricts the algebra-driven suites to the listed catalog ids; empty
/// means the suite's default set. Unknown ids throw std::out_of_range;
/// trials < 1 or an unknown suite throw std::invalid_argument.
PropertyRunReport run_suite(const std::string& suite, std::uint64_t seed, int trials,
                            const std::vector<std::string>& algebras = {});

/// wall_ms is the only field that varies between identical runs; serializing
/// with include_wall_ms = false gives the canonical byte-comparable form.
nlohmann::json report_to_json(const PropertyRunReport& report, bool include_wall_ms = true);

}  // namespace dexpnorm
