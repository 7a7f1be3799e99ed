// Integration tests for the command-line tool: exit codes, output formats,
// and the CSV round-trip contract. The binary path arrives in DEXPNORM_CLI.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "oracle_values.hpp"

namespace {

std::string cli_path() {
  const char* path = std::getenv("DEXPNORM_CLI");
  REQUIRE_MESSAGE(path != nullptr, "DEXPNORM_CLI must point at the built binary");
  return path;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string command = cli_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buffer;
  std::size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.out.append(buffer.data(), got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string write_file(const std::string& name, const std::string& body) {
  std::ofstream out(name);
  out << body;
  return name;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    rows.push_back(std::move(cells));
  }
  return rows;
}

const char* kHeis3Json = R"({
  "name": "heis3",
  "dim": 3,
  "brackets": [ {"i": 0, "j": 1, "coeffs": {"2": 1.0}} ]
})";

const char* kBrokenJacobi = R"({
  "name": "broken",
  "dim": 3,
  "brackets": [
    {"i": 0, "j": 1, "coeffs": {"1": 1.0}},
    {"i": 0, "j": 2, "coeffs": {"2": 1.0}},
    {"i": 1, "j": 2, "coeffs": {"0": 1.0}}
  ]
})";

}  // namespace

TEST_CASE("validate: exit codes 0 / 1 / 2") {
  const std::string good = write_file("cli_good.json", kHeis3Json);
  CHECK(run("validate " + good).exit_code == 0);

  const std::string broken = write_file("cli_broken.json", kBrokenJacobi);
  const RunResult bad = run("validate " + broken);
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("jacobi") != std::string::npos);

  const std::string malformed = write_file("cli_malformed.json", "{ not json !");
  CHECK(run("validate " + malformed).exit_code == 2);

  const std::string unknown_field =
      write_file("cli_unknown.json", R"({"name":"x","dim":1,"brackets":[],"foo":1})");
  CHECK(run("validate " + unknown_field).exit_code == 2);

  std::remove(good.c_str());
  std::remove(broken.c_str());
  std::remove(malformed.c_str());
  std::remove(unknown_field.c_str());
}

TEST_CASE("bounds: golden values and the trivial x = 0 case") {
  const RunResult sl2 = run("bounds sl2 --x 1,0,0");
  REQUIRE(sl2.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(sl2.out);
  CHECK(std::abs(j["exact_max"].get<double>() - oracle::kPhiMinus2) < 1e-6);
  CHECK(std::abs(j["exact_min"].get<double>() - oracle::kPhi2) < 1e-6);
  CHECK(std::abs(j["thm1_C"].get<double>() - 1.0) < 1e-9);
  CHECK(std::abs(j["thm1_D"].get<double>() - 1.0) < 1e-9);
  CHECK_FALSE(j.contains("nilp_lower"));

  const RunResult h3 = run("bounds heis3 --x 1,0,0");
  REQUIRE(h3.exit_code == 0);
  const nlohmann::json jh = nlohmann::json::parse(h3.out);
  CHECK(std::abs(jh["exact_min"].get<double>() - oracle::kHeis3Min) < 1e-5);
  CHECK(std::abs(jh["exact_max"].get<double>() - oracle::kHeis3Max) < 1e-5);
  CHECK(jh.contains("nilp_lower"));
  CHECK_FALSE(jh.contains("thm1_lower"));

  const RunResult ab = run("bounds abelian3 --x 0.3,0.4,0");
  REQUIRE(ab.exit_code == 0);
  const nlohmann::json ja = nlohmann::json::parse(ab.out);
  for (const char* key : {"exact_min", "exact_max", "thm2_lower", "thm2_upper"})
    CHECK(std::abs(ja[key].get<double>() - 1.0) < 1e-12);

  const RunResult zero = run("bounds sl2 --x 0,0,0");
  CHECK(zero.exit_code == 0);
  CHECK(zero.out.find("identity") != std::string::npos);

  CHECK(run("bounds sl2 --x 1,0").exit_code == 2);      // dimension mismatch
  CHECK(run("bounds nosuch --x 1,0,0").exit_code == 2); // no catalog entry, no file
}

TEST_CASE("sweep: closed forms along catalog rays") {
  SUBCASE("sl2 log grid matches (e^{2t} - 1)/(2t)") {
    const RunResult r = run("sweep sl2 --x-hat 1,0,0 --t-min 0.1 --t-max 50 --steps 40 --scale log");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 41);
    CHECK(rows[0][0] == "t");
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double t = std::stod(rows[i][0]);
      const double exact_max = std::stod(rows[i][2]);
      const double expected = (std::exp(2.0 * t) - 1.0) / (2.0 * t);
      CHECK(std::abs(exact_max - expected) <= 1e-9 * expected);
    }
  }
  SUBCASE("heis3 ray matches the 2x2 closed form") {
    const RunResult r =
        run("sweep heis3 --x-hat 1,0,0 --t-min 0.5 --t-max 10 --steps 20 --scale linear");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 21);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double t = std::stod(rows[i][0]);
      CHECK(std::abs(std::stod(rows[i][2]) - oracle::heis3_ray_max(t)) <= 1e-9);
      CHECK(std::abs(std::stod(rows[i][1]) - oracle::heis3_ray_min(t)) <= 1e-9);
      // thm1 cells must be empty for a defective direction
      CHECK(rows[i][5].empty());
      CHECK(rows[i][6].empty());
      CHECK_FALSE(rows[i][9].empty());  // nilpotent bound present
    }
  }
  SUBCASE("abelian ray: everything is 1") {
    const RunResult r =
        run("sweep abelian2 --x-hat 1,0 --t-min 1 --t-max 5 --steps 5 --scale linear");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    for (std::size_t i = 1; i < rows.size(); ++i)
      for (int col : {1, 2, 3, 4, 5, 6, 8, 9, 10})
        CHECK(std::abs(std::stod(rows[i][static_cast<std::size_t>(col)]) - 1.0) < 1e-12);
  }
  SUBCASE("bad grid arguments exit 2") {
    CHECK(run("sweep sl2 --x-hat 1,0,0 --t-min 0 --t-max 5 --steps 10").exit_code == 2);
    CHECK(run("sweep sl2 --x-hat 1,0,0 --t-min 1 --t-max 5 --steps 1").exit_code == 2);
  }
}

TEST_CASE("CSV cells round-trip at 17 significant digits") {
  const RunResult r =
      run("sweep sl2 --x-hat 1,0,0 --t-min 0.1 --t-max 20 --steps 15 --scale log --csv");
  REQUIRE(r.exit_code == 0);
  const auto rows = parse_csv(r.out);
  for (std::size_t i = 1; i < rows.size(); ++i)
    for (const std::string& cell : rows[i]) {
      if (cell.empty()) continue;
      const double value = std::stod(cell);
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", value);
      CHECK(cell == buf);
    }
}

TEST_CASE("verify: exit codes and determinism") {
  const RunResult weyl = run("verify weyl --seed 42 --trials 100");
  CHECK(weyl.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(weyl.out);
  CHECK(j["failures"].empty());
  CHECK(j["suite"] == "weyl");

  const RunResult thm2 = run("verify thm2 --seed 7 --trials 60");
  CHECK(thm2.exit_code == 0);

  CHECK(run("verify nosuchsuite").exit_code == 2);

  // same seed, same failures array, byte for byte
  const RunResult a = run("verify minimax --seed 11 --trials 30");
  const RunResult b = run("verify minimax --seed 11 --trials 30");
  const nlohmann::json ja = nlohmann::json::parse(a.out);
  const nlohmann::json jb = nlohmann::json::parse(b.out);
  CHECK(ja["failures"].dump() == jb["failures"].dump());
  CHECK(ja["max_residuals"].dump() == jb["max_residuals"].dump());
}

TEST_CASE("catalog and info commands") {
  const RunResult cat = run("catalog --json");
  REQUIRE(cat.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(cat.out);
  CHECK(j.size() >= 11);
  bool saw_sl2 = false;
  for (const auto& entry : j)
    if (entry["id"] == "sl2") saw_sl2 = true;
  CHECK(saw_sl2);

  const RunResult info = run("info heis3 --json");
  REQUIRE(info.exit_code == 0);
  const nlohmann::json ji = nlohmann::json::parse(info.out);
  CHECK(ji["dim"] == 3);
  CHECK(ji["nilpotent_step"] == 2);
  CHECK(std::abs(ji["delta0_upper"].get<double>() - oracle::kDelta0CertHeis3) < 1e-12);
}
