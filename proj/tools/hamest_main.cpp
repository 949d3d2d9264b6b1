// Command-line front end: problem ingestion, parameter overrides, sweep
// orchestration, and CSV / JSON-lines emission.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hamest/cli.hpp"

namespace {

struct CommonArgs {
  std::string problem_path;
  std::string out_path;
  hamest::RunConfig config;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("problem", args.problem_path, "problem spec file (JSON)")
      ->required();
  cmd->add_option("--eps", args.config.eps, "target algorithmic error");
  cmd->add_option("--seed", args.config.seed, "RNG seed");
  cmd->add_flag("--adaptive", args.config.adaptive,
                "double the node count until the estimate stabilizes");
  cmd->add_flag("--auto-normalize", args.config.auto_normalize,
                "rescale over-budget Hamiltonians into T");
  cmd->add_option("--override-p", args.config.override_p,
                  "force the product-formula order (1 or even)");
  cmd->add_option("--override-g", args.config.override_g,
                  "force the integer time subdivision");
  cmd->add_option("--override-n", args.config.override_n,
                  "force the Chebyshev node count (even)");
  cmd->add_option("--override-q", args.config.override_q,
                  "force the sinc window half-width");
  cmd->add_option("--out", args.out_path, "output path (default stdout)");
  cmd->add_option("--format", args.config.format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
}

int with_output(const CommonArgs& args, auto&& body) {
  hamest::ParseOptions popts;
  popts.auto_normalize = args.config.auto_normalize;
  const hamest::EvolutionProblem problem =
      hamest::parse_problem(args.problem_path, popts);
  if (args.out_path.empty()) return body(problem, std::cout);
  std::ofstream out(args.out_path);
  if (!out)
    throw hamest::ValidationError("cannot open output file '" +
                                  args.out_path + "'");
  return body(problem, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hamiltonian-evolution amplitude estimator: product formulas, "
               "windowed-sinc fractional queries, Chebyshev extrapolation"};
  app.require_subcommand(1);

  CommonArgs run_args, sweep_args, noise_args, plan_args;
  std::string sweep_axis;
  std::vector<double> sweep_values;
  double noise_sigma = 0.0;
  std::size_t noise_trials = 10000;

  CLI::App* run = app.add_subcommand("run", "estimate one amplitude");
  add_common(run, run_args);

  CLI::App* sweep =
      app.add_subcommand("sweep", "sweep one axis, one CSV row per value");
  add_common(sweep, sweep_args);
  sweep->add_option("--axis", sweep_axis, "q | n | T | eps")->required();
  sweep->add_option("--values", sweep_values, "axis values")
      ->required()
      ->delimiter(',');

  CLI::App* noise =
      app.add_subcommand("noise", "Monte-Carlo uncertainty propagation");
  add_common(noise, noise_args);
  noise->add_option("--sigma", noise_sigma, "per-component sample noise std")
      ->required();
  noise->add_option("--trials", noise_trials, "Monte-Carlo trials (>= 100)");

  CLI::App* plan = app.add_subcommand(
      "show-plan", "print the parameter choice without estimating");
  add_common(plan, plan_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return with_output(run_args, [&](const auto& p, std::ostream& o) {
        return hamest::cmd_run(p, run_args.config, o);
      });
    if (sweep->parsed())
      return with_output(sweep_args, [&](const auto& p, std::ostream& o) {
        return hamest::cmd_sweep(p, sweep_args.config, sweep_axis,
                                 sweep_values, o);
      });
    if (noise->parsed())
      return with_output(noise_args, [&](const auto& p, std::ostream& o) {
        return hamest::cmd_noise(p, noise_args.config, noise_sigma,
                                 noise_trials, o);
      });
    if (plan->parsed())
      return with_output(plan_args, [&](const auto& p, std::ostream& o) {
        return hamest::cmd_show_plan(p, plan_args.config, o);
      });
  } catch (const hamest::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
