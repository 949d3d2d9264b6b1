#include "hamest/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace hamest {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17e", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
  return v.has_value() ? fmt(*v) : std::string();
}

struct RunRow {
  cplx value;
  std::optional<cplx> exact;
  std::optional<double> abs_error;
  const EstimateReport* report;
};

RunRow make_row(const EstimateReport& report) {
  RunRow row;
  row.value = report.value;
  row.exact = report.exact_value;
  if (report.exact_value.has_value())
    row.abs_error = std::abs(report.value - *report.exact_value);
  row.report = &report;
  return row;
}

void write_run_csv(const RunRow& row, std::ostream& out, bool header) {
  if (header)
    out << "value_re,value_im,exact_re,exact_im,abs_error,eps,p,g,n,q,"
           "n_final,query_count,max_depth,sinc_bound,cheb_predicted,"
           "converged\n";
  const EstimateReport& r = *row.report;
  const ParameterChoice& pc = r.parameters;
  out << fmt(row.value.real()) << ',' << fmt(row.value.imag()) << ','
      << (row.exact ? fmt(row.exact->real()) : std::string()) << ','
      << (row.exact ? fmt(row.exact->imag()) : std::string()) << ','
      << fmt_opt(row.abs_error) << ',' << fmt(r.eps) << ',' << pc.order.p
      << ',' << pc.g << ',' << pc.n << ',' << pc.q << ',' << r.n_final << ','
      << r.query_count << ',' << r.max_depth << ','
      << fmt(r.sinc_error_bound) << ',' << fmt(pc.predicted_cheb_error) << ','
      << (r.converged ? 1 : 0) << '\n';
}

void write_run_jsonl(const RunRow& row, std::ostream& out) {
  const EstimateReport& r = *row.report;
  const ParameterChoice& pc = r.parameters;
  json j;
  j["value_re"] = row.value.real();
  j["value_im"] = row.value.imag();
  if (row.exact) {
    j["exact_re"] = row.exact->real();
    j["exact_im"] = row.exact->imag();
    j["abs_error"] = *row.abs_error;
  } else {
    j["exact_re"] = nullptr;
    j["exact_im"] = nullptr;
    j["abs_error"] = nullptr;
  }
  j["eps"] = r.eps;
  j["p"] = pc.order.p;
  j["g"] = pc.g;
  j["n"] = pc.n;
  j["q"] = pc.q;
  j["n_final"] = r.n_final;
  j["query_count"] = r.query_count;
  j["max_depth"] = r.max_depth;
  j["sinc_bound"] = r.sinc_error_bound;
  j["cheb_predicted"] = pc.predicted_cheb_error;
  j["converged"] = r.converged;
  out << j.dump() << '\n';
}

}  // namespace

EstimateOptions estimate_options(const RunConfig& config) {
  EstimateOptions opts;
  opts.adaptive = config.adaptive;
  opts.override_p = config.override_p;
  opts.override_g = config.override_g;
  opts.override_n = config.override_n;
  opts.override_q = config.override_q;
  return opts;
}

int cmd_run(const EvolutionProblem& problem, const RunConfig& config,
            std::ostream& out) {
  const EstimateReport report =
      full_estimate(problem, config.eps, estimate_options(config));
  const RunRow row = make_row(report);
  if (config.format == "jsonl")
    write_run_jsonl(row, out);
  else
    write_run_csv(row, out, true);
  return report.converged ? 0 : 2;
}

int cmd_sweep(const EvolutionProblem& problem, const RunConfig& config,
              const std::string& axis, const std::vector<double>& values,
              std::ostream& out) {
  if (axis != "q" && axis != "n" && axis != "T" && axis != "eps")
    throw ValidationError("sweep axis must be one of q, n, T, eps");
  if (values.empty()) throw ValidationError("sweep needs at least one value");

  if (config.format != "jsonl")
    out << "axis,value,abs_error,sinc_bound,cheb_predicted,query_count,"
           "max_depth,p,g,n_final,q,wall_ms\n";

  int exit_code = 0;
  for (double v : values) {
    RunConfig cfg = config;
    const EvolutionProblem* prob = &problem;
    std::optional<EvolutionProblem> rebuilt;
    if (axis == "q") {
      if (!(v >= 1.0)) throw ValidationError("sweep q: values must be >= 1");
      cfg.override_q = static_cast<int>(v);
      cfg.adaptive = false;
    } else if (axis == "n") {
      cfg.override_n = static_cast<int>(v);
      cfg.adaptive = false;
    } else if (axis == "eps") {
      cfg.eps = v;
    } else {  // T: every stage's evolution time replaced by the axis value
      if (!(v >= 0.0)) throw ValidationError("sweep T: values must be >= 0");
      std::vector<EvolutionStage> stages = problem.stages();
      for (EvolutionStage& st : stages) st.t_evolution = v;
      rebuilt.emplace(std::move(stages), problem.psi1(), problem.psi2());
      prob = &*rebuilt;
    }

    const auto t0 = std::chrono::steady_clock::now();
    const EstimateReport report =
        full_estimate(*prob, cfg.eps, estimate_options(cfg));
    const auto t1 = std::chrono::steady_clock::now();
    const double wall_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (!report.converged) exit_code = 2;

    const RunRow row = make_row(report);
    if (config.format == "jsonl") {
      json j;
      j["axis"] = axis;
      j["value"] = v;
      j["abs_error"] =
          row.abs_error.has_value() ? json(*row.abs_error) : json(nullptr);
      j["sinc_bound"] = report.sinc_error_bound;
      j["cheb_predicted"] = report.parameters.predicted_cheb_error;
      j["query_count"] = report.query_count;
      j["max_depth"] = report.max_depth;
      j["p"] = report.parameters.order.p;
      j["g"] = report.parameters.g;
      j["n_final"] = report.n_final;
      j["q"] = report.parameters.q;
      j["wall_ms"] = wall_ms;
      out << j.dump() << '\n';
    } else {
      out << axis << ',' << fmt(v) << ',' << fmt_opt(row.abs_error) << ','
          << fmt(report.sinc_error_bound) << ','
          << fmt(report.parameters.predicted_cheb_error) << ','
          << report.query_count << ',' << report.max_depth << ','
          << report.parameters.order.p << ',' << report.parameters.g << ','
          << report.n_final << ',' << report.parameters.q << ','
          << fmt(wall_ms) << '\n';
    }
  }
  return exit_code;
}

int cmd_noise(const EvolutionProblem& problem, const RunConfig& config,
              double sigma_noise, std::size_t trials, std::ostream& out) {
  const ParameterChoice params =
      choose_parameters(problem, config.eps, estimate_options(config));
  const NoiseStudy study =
      noise_study(problem, params, sigma_noise, trials, config.seed);
  const double mc_slack =
      1.0 + 3.0 / std::sqrt(static_cast<double>(study.trials));
  const bool pass = study.std_dev <= study.composed_std_bound * mc_slack;

  if (config.format == "jsonl") {
    json j;
    j["sigma_noise"] = study.sigma_noise;
    j["trials"] = study.trials;
    j["empirical_variance"] = study.variance;
    j["empirical_std"] = study.std_dev;
    j["clean_re"] = study.clean_value.real();
    j["clean_im"] = study.clean_value.imag();
    j["composed_std_bound"] = study.composed_std_bound;
    j["composed_linf_bound"] = study.composed_linf_bound;
    j["weight_l1"] = study.weight_l1;
    j["w_min"] = study.w_min;
    j["pass"] = pass;
    out << j.dump() << '\n';
  } else {
    out << "sigma_noise,trials,empirical_variance,empirical_std,clean_re,"
           "clean_im,composed_std_bound,composed_linf_bound,weight_l1,w_min,"
           "pass\n";
    out << fmt(study.sigma_noise) << ',' << study.trials << ','
        << fmt(study.variance) << ',' << fmt(study.std_dev) << ','
        << fmt(study.clean_value.real()) << ',' << fmt(study.clean_value.imag())
        << ',' << fmt(study.composed_std_bound) << ','
        << fmt(study.composed_linf_bound) << ',' << fmt(study.weight_l1) << ','
        << fmt(study.w_min) << ',' << (pass ? 1 : 0) << '\n';
  }
  return pass ? 0 : 2;
}

int cmd_show_plan(const EvolutionProblem& problem, const RunConfig& config,
                  std::ostream& out) {
  const ParameterChoice pc =
      choose_parameters(problem, config.eps, estimate_options(config));
  out << "stages (M) = " << problem.stage_count() << '\n'
      << "dim = " << problem.dim() << '\n'
      << "eps = " << fmt(pc.eps) << '\n'
      << "eps_cheb = " << fmt(pc.eps_cheb) << '\n'
      << "eps_sinc = " << fmt(pc.eps_sinc) << '\n'
      << "p = " << pc.order.p << '\n'
      << "g = " << pc.g << '\n'
      << "n = " << pc.n << '\n'
      << "q = " << pc.q << '\n';
  out << "t_j =";
  for (double t : pc.t_js) out << ' ' << fmt(t);
  out << '\n';
  out << "alpha_j =";
  for (double a : pc.alphas) out << ' ' << fmt(a);
  out << '\n';
  out << "alpha_max = " << fmt(pc.alpha_max) << '\n'
      << "T_max = " << fmt(pc.t_max) << '\n'
      << "r_disc = " << fmt(pc.r_disc) << '\n'
      << "rho = " << fmt(pc.rho) << '\n'
      << "predicted_cheb_error = " << fmt(pc.predicted_cheb_error) << '\n'
      << "sinc_error_bound = " << fmt(sinc_error_bound_from_q(pc.q)) << '\n'
      << "g_from_constraint = " << (pc.g_from_constraint ? 1 : 0) << '\n'
      << "alpha_fallback = " << (pc.alpha_fallback ? 1 : 0) << '\n'
      << "q_bound_valid = " << (pc.q_bound_valid ? 1 : 0) << '\n'
      << "planned_query_count = "
      << predicted_query_count(problem, pc, pc.n) << '\n'
      << "planned_max_depth = " << predicted_max_depth(problem, pc, pc.n)
      << '\n';
  return 0;
}

}  // namespace hamest
