#include <doctest.h>

#include <sstream>

#include "hamest/cli.hpp"
#include "test_support.hpp"

using namespace hamest;

namespace {

EvolutionProblem simple_problem() {
  return parse_problem_text(R"({
    "qubits": 1,
    "stages": [
      { "V": "identity", "T": 2.0, "H": [ {"coeff": 0.5, "pauli": "Z"} ] }
    ],
    "psi1": "0", "psi2": "0"
  })");
}

std::size_t count_fields(const std::string& line) {
  return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) +
         1;
}

}  // namespace

TEST_CASE("cmd_run: CSV header matches the row width, error within eps") {
  const EvolutionProblem prob = simple_problem();
  RunConfig cfg;
  cfg.eps = 1e-4;
  std::ostringstream out;
  const int code = cmd_run(prob, cfg, out);
  CHECK(code == 0);

  std::istringstream lines(out.str());
  std::string header, row;
  REQUIRE(std::getline(lines, header));
  REQUIRE(std::getline(lines, row));
  CHECK(header.rfind("value_re,", 0) == 0);
  CHECK(count_fields(header) == count_fields(row));

  // commuting problem: reported |error| obeys the target
  const std::size_t pos_err = [&] {
    std::size_t commas = 0, i = 0;
    for (; i < row.size(); ++i) {
      if (row[i] == ',') ++commas;
      if (commas == 4) break;
    }
    return i + 1;
  }();
  const double abs_error = std::stod(row.substr(pos_err));
  CHECK(abs_error <= 1e-4);
}

TEST_CASE("cmd_run: identical configuration emits identical bytes") {
  const EvolutionProblem prob = simple_problem();
  RunConfig cfg;
  cfg.eps = 1e-5;
  cfg.seed = 1234;
  std::ostringstream a, b;
  cmd_run(prob, cfg, a);
  cmd_run(prob, cfg, b);
  CHECK(a.str() == b.str());
  CHECK_FALSE(a.str().empty());
}

TEST_CASE("cmd_run: jsonl output round-trips through the JSON parser") {
  const EvolutionProblem prob = simple_problem();
  RunConfig cfg;
  cfg.format = "jsonl";
  std::ostringstream out;
  CHECK(cmd_run(prob, cfg, out) == 0);
  CHECK(out.str().front() == '{');
  CHECK(out.str().find("\"query_count\"") != std::string::npos);
}

TEST_CASE("cmd_sweep: q axis emits one row per value") {
  const EvolutionProblem prob = simple_problem();
  RunConfig cfg;
  cfg.eps = 1e-4;
  std::ostringstream out;
  const int code = cmd_sweep(prob, cfg, "q", {4.0, 8.0, 12.0}, out);
  CHECK(code == 0);
  std::istringstream lines(out.str());
  std::string line;
  std::size_t rows = 0;
  while (std::getline(lines, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 4);  // header + 3 values
}

TEST_CASE("cmd_sweep rejects unknown axes") {
  const EvolutionProblem prob = simple_problem();
  RunConfig cfg;
  std::ostringstream out;
  CHECK_THROWS_AS(cmd_sweep(prob, cfg, "tau", {1.0}, out), ValidationError);
}

TEST_CASE("cmd_noise: zero sigma reports zero variance and passes") {
  const EvolutionProblem prob = simple_problem();
  RunConfig cfg;
  cfg.override_n = 4;
  cfg.override_q = 4;
  std::ostringstream out;
  const int code = cmd_noise(prob, cfg, 0.0, 150, out);
  CHECK(code == 0);
  std::istringstream lines(out.str());
  std::string header, row;
  REQUIRE(std::getline(lines, header));
  REQUIRE(std::getline(lines, row));
  CHECK(row.rfind("0.0", 0) == 0);  // sigma column
  CHECK(row.back() == '1');         // pass column
}

TEST_CASE("cmd_show_plan prints the parameter block") {
  const EvolutionProblem prob = simple_problem();
  RunConfig cfg;
  cfg.eps = 1e-4;
  std::ostringstream out;
  CHECK(cmd_show_plan(prob, cfg, out) == 0);
  const std::string text = out.str();
  for (const char* key : {"p = ", "g = ", "n = ", "q = ", "alpha_max",
                          "planned_query_count"})
    CHECK(text.find(key) != std::string::npos);
}
