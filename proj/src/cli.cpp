#include "mpc/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "mpc/bruteforce.hpp"
#include "mpc/errors.hpp"
#include "mpc/pipeline.hpp"

namespace mpc {

namespace {

int component_error(std::ostream& err, const std::string& what) {
  err << "error: " << what << "\n";
  return 1;
}

int usage_error(std::ostream& err, const std::string& what) {
  err << "error: " << what << "\n";
  return 2;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

int cmd_gen(const GenSpec& spec, const std::string& out_path, std::ostream& err) {
  try {
    save_instance(generate_instance(spec), out_path);
    return 0;
  } catch (const ParseError& e) {
    return usage_error(err, e.what());
  } catch (const Error& e) {
    return component_error(err, e.what());
  }
}

int cmd_solve(const std::string& instance_path, const SolveOptions& options, std::ostream& out,
              std::ostream& err) {
  try {
    Instance instance = load_instance(instance_path);
    Params params;
    if (options.delta.has_value()) params.delta = *options.delta;
    if (options.epsilon.has_value()) params.epsilon = *options.epsilon;

    ContractReport report;
    if (options.exact) {
      ExactOpt opt = exact_opt(instance, params);
      report = revenue(instance, opt.best, Method::BruteForce);
    } else {
      report = solve(instance, params);
    }
    if (options.debug_lp && report.lp.has_value()) {
      Params debug_params = params;
      FractionalSolution fractional = solve_fractional_allocation(instance, debug_params);
      err << describe_columns(instance, fractional);
    }
    out << report_to_json_text(report, options.debug_lp);
    return 0;
  } catch (const ParseError& e) {
    return usage_error(err, e.what());
  } catch (const ValidationError& e) {
    return usage_error(err, e.what());
  } catch (const Error& e) {
    return component_error(err, e.what());
  }
}

int cmd_verify(const std::string& instance_path, std::ostream& out, std::ostream& err) {
  try {
    std::ifstream in(instance_path);
    if (!in) return usage_error(err, "cannot open instance file: " + instance_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      Instance instance = instance_from_json_text(buf.str());
      out << "ok: " << instance.n_agents << " agents, " << instance.n_projects
          << " projects\n";
      return 0;
    } catch (const ValidationError& e) {
      for (const auto& v : e.violations) out << "violation: " << v << "\n";
      return 1;
    }
  } catch (const ParseError& e) {
    return usage_error(err, e.what());
  } catch (const Error& e) {
    return component_error(err, e.what());
  }
}

int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err) {
  try {
    double space = 1.0;
    for (int i = 0; i < options.spec.n_agents; ++i)
      space *= static_cast<double>(options.spec.n_projects + 1);
    if (space > 1e7)
      return component_error(err, "bench: instance size exceeds the exact-oracle guard");

    std::ofstream csv(options.out_csv);
    if (!csv) return component_error(err, "cannot write CSV file: " + options.out_csv);
    csv << "seed,n,m,class,approx,exact,ratio\n";

    Params params;
    std::vector<double> ratios;
    for (int k = 0; k < options.count; ++k) {
      GenSpec spec = options.spec;
      spec.seed = options.spec.seed + static_cast<std::uint64_t>(k);
      Instance instance = generate_instance(spec);
      const double approx = solve(instance, params).total_revenue;
      const double exact = exact_opt(instance, params).revenue;
      const double ratio = exact > 1e-12 ? approx / exact : 1.0;
      ratios.push_back(ratio);
      csv << spec.seed << ',' << spec.n_agents << ',' << spec.n_projects << ','
          << to_string(spec.function_class) << ',' << format_double(approx) << ','
          << format_double(exact) << ',' << format_double(ratio) << "\n";
    }

    if (!ratios.empty()) {
      std::vector<double> sorted = ratios;
      std::sort(sorted.begin(), sorted.end());
      const double median = sorted.size() % 2 == 1
                                ? sorted[sorted.size() / 2]
                                : 0.5 * (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]);
      out << "instances=" << ratios.size() << " min_ratio=" << format_double(sorted.front())
          << " median_ratio=" << format_double(median) << "\n";
    } else {
      out << "instances=0\n";
    }
    return 0;
  } catch (const ParseError& e) {
    return usage_error(err, e.what());
  } catch (const Error& e) {
    return component_error(err, e.what());
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"multi-project contract design: generate, solve, verify, benchmark"};
  app.require_subcommand(1);

  GenSpec gen_spec;
  std::string gen_class = "additive", gen_costs = "random", gen_out;
  auto* gen = app.add_subcommand("gen", "generate a random instance file");
  gen->add_option("--n", gen_spec.n_agents, "number of agents")->required();
  gen->add_option("--m", gen_spec.n_projects, "number of projects")->required();
  gen->add_option("--class", gen_class, "function class: additive|budget_additive|coverage|xos");
  gen->add_option("--costs", gen_costs, "cost regime: zero|low|random");
  gen->add_option("--seed", gen_spec.seed, "random seed");
  gen->add_option("--out", gen_out, "output path")->required();

  std::string solve_path;
  SolveOptions solve_options;
  double solve_delta = 0.0, solve_epsilon = 0.0;
  auto* solve_cmd = app.add_subcommand("solve", "solve an instance file, report JSON on stdout");
  solve_cmd->add_option("file", solve_path, "instance file")->required();
  solve_cmd->add_flag("--exact", solve_options.exact, "brute-force optimum instead");
  auto* delta_opt = solve_cmd->add_option("--delta", solve_delta, "dominance threshold");
  auto* eps_opt = solve_cmd->add_option("--epsilon", solve_epsilon, "dual bound search width");
  solve_cmd->add_flag("--debug-lp", solve_options.debug_lp,
                      "dump the restricted LP and include diagnostics");

  std::string verify_path;
  auto* verify_cmd = app.add_subcommand("verify", "validate an instance file");
  verify_cmd->add_option("file", verify_path, "instance file")->required();

  BenchOptions bench_options;
  std::string bench_class = "additive", bench_costs = "random";
  auto* bench = app.add_subcommand("bench", "compare against the exact oracle over seeds");
  bench->add_option("--count", bench_options.count, "number of instances");
  bench->add_option("--n", bench_options.spec.n_agents, "number of agents")->required();
  bench->add_option("--m", bench_options.spec.n_projects, "number of projects")->required();
  bench->add_option("--class", bench_class, "function class");
  bench->add_option("--costs", bench_costs, "cost regime");
  bench->add_option("--seed", bench_options.spec.seed, "base seed");
  bench->add_option("--out", bench_options.out_csv, "CSV output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (gen->parsed()) {
      gen_spec.function_class = function_class_from_name(gen_class);
      gen_spec.cost_regime = cost_regime_from_name(gen_costs);
      return cmd_gen(gen_spec, gen_out, err);
    }
    if (solve_cmd->parsed()) {
      if (delta_opt->count() > 0) solve_options.delta = solve_delta;
      if (eps_opt->count() > 0) solve_options.epsilon = solve_epsilon;
      return cmd_solve(solve_path, solve_options, out, err);
    }
    if (verify_cmd->parsed()) return cmd_verify(verify_path, out, err);
    if (bench->parsed()) {
      bench_options.spec.function_class = function_class_from_name(bench_class);
      bench_options.spec.cost_regime = cost_regime_from_name(bench_costs);
      return cmd_bench(bench_options, out, err);
    }
  } catch (const ParseError& e) {
    return usage_error(err, e.what());
  } catch (const Error& e) {
    return component_error(err, e.what());
  }
  return usage_error(err, "no subcommand given");
}

}  // namespace mpc
