#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hamest/problem_io.hpp"

namespace hamest {

struct RunConfig {
  double eps = 1e-4;
  std::uint64_t seed = 0;
  bool adaptive = false;
  bool auto_normalize = false;
  std::optional<int> override_p;
  std::optional<std::int64_t> override_g;
  std::optional<int> override_n;
  std::optional<int> override_q;
  std::string format = "csv";  // csv | jsonl
};

// Exit codes: 0 success, 1 validation error (thrown as ValidationError or
// std::invalid_argument before any of these return), 2 convergence failure.
int cmd_run(const EvolutionProblem& problem, const RunConfig& config,
            std::ostream& out);
int cmd_sweep(const EvolutionProblem& problem, const RunConfig& config,
              const std::string& axis, const std::vector<double>& values,
              std::ostream& out);
int cmd_noise(const EvolutionProblem& problem, const RunConfig& config,
              double sigma_noise, std::size_t trials, std::ostream& out);
int cmd_show_plan(const EvolutionProblem& problem, const RunConfig& config,
                  std::ostream& out);

EstimateOptions estimate_options(const RunConfig& config);

}  // namespace hamest
