#include "mpc/generator.hpp"

#include <random>

#include "mpc/errors.hpp"

namespace mpc {

namespace {

// Uniform doubles built directly from mt19937_64 words; unlike
// std::uniform_real_distribution this is identical across standard libraries,
// which keeps generated files byte-identical everywhere.
struct Rng {
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  std::mt19937_64 engine;

  double unit() { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(engine() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

// Skewed raw profile: mostly small entries with one boosted agent, scaled so
// the total hits `target`.
Eigen::VectorXd skewed_profile(Rng& rng, int n, double target) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) {
    const double u = rng.unit();
    v[i] = 0.02 + 0.98 * u * u * u;
  }
  v[rng.uniform_int(0, n - 1)] *= 25.0;
  return v * (target / v.sum());
}

SuccessFunction make_function(Rng& rng, int n, FunctionClass cls) {
  switch (cls) {
    case FunctionClass::Additive:
      return SuccessFunction::additive(skewed_profile(rng, n, rng.uniform(0.4, 1.0)));
    case FunctionClass::BudgetAdditive: {
      const double budget = rng.uniform(0.3, 0.9);
      const double total = budget * rng.uniform(0.8, 1.4);
      return SuccessFunction::budget_additive(skewed_profile(rng, n, total), budget);
    }
    case FunctionClass::Coverage: {
      const int universe = n + rng.uniform_int(0, n);
      Eigen::VectorXd weights(universe);
      for (int e = 0; e < universe; ++e) weights[e] = 0.05 + 0.95 * rng.unit();
      weights *= rng.uniform(0.4, 1.0) / weights.sum();
      std::vector<std::vector<int>> sets(n);
      const double keep = std::min(1.0, 2.5 / n);
      for (int i = 0; i < n; ++i)
        for (int e = 0; e < universe; ++e)
          if (rng.unit() < keep) sets[i].push_back(e);
      // A boosted agent covering many elements gives the project a skewed
      // singleton profile like the other classes.
      const int boosted = rng.uniform_int(0, n - 1);
      sets[boosted].clear();
      for (int e = 0; e < universe; ++e)
        if (rng.unit() < 0.6) sets[boosted].push_back(e);
      return SuccessFunction::coverage(std::move(weights), std::move(sets));
    }
    case FunctionClass::Xos: {
      const int n_clauses = rng.uniform_int(2, 4);
      Eigen::MatrixXd clauses(n_clauses, n);
      for (int l = 0; l < n_clauses; ++l) clauses.row(l) = skewed_profile(rng, n, 1.0);
      const double target = rng.uniform(0.4, 1.0);
      clauses *= target / clauses.rowwise().sum().maxCoeff();
      return SuccessFunction::xos(std::move(clauses));
    }
  }
  throw Error("unknown function class");
}

}  // namespace

FunctionClass function_class_from_name(const std::string& name) {
  if (name == "additive") return FunctionClass::Additive;
  if (name == "budget_additive") return FunctionClass::BudgetAdditive;
  if (name == "coverage") return FunctionClass::Coverage;
  if (name == "xos") return FunctionClass::Xos;
  throw ParseError("unknown function class: " + name);
}

CostRegime cost_regime_from_name(const std::string& name) {
  if (name == "zero") return CostRegime::Zero;
  if (name == "low") return CostRegime::Low;
  if (name == "random") return CostRegime::Random;
  throw ParseError("unknown cost regime: " + name);
}

std::string to_string(FunctionClass c) {
  switch (c) {
    case FunctionClass::Additive:
      return "additive";
    case FunctionClass::BudgetAdditive:
      return "budget_additive";
    case FunctionClass::Coverage:
      return "coverage";
    case FunctionClass::Xos:
      return "xos";
  }
  return "?";
}

std::string to_string(CostRegime r) {
  switch (r) {
    case CostRegime::Zero:
      return "zero";
    case CostRegime::Low:
      return "low";
    case CostRegime::Random:
      return "random";
  }
  return "?";
}

Instance generate_instance(const GenSpec& spec) {
  if (spec.n_agents < 1 || spec.n_projects < 1)
    throw PreconditionError("generator needs at least one agent and one project");
  Rng rng(spec.seed);

  Instance instance;
  instance.n_agents = spec.n_agents;
  instance.n_projects = spec.n_projects;
  for (int j = 0; j < spec.n_projects; ++j)
    instance.functions.push_back(make_function(rng, spec.n_agents, spec.function_class));

  instance.costs.resize(spec.n_agents, spec.n_projects);
  for (int j = 0; j < spec.n_projects; ++j) {
    double mean_singleton = 0.0;
    double max_singleton = 0.0;
    for (int i = 0; i < spec.n_agents; ++i) {
      const double v = singleton_value(instance.functions[j], i);
      mean_singleton += v / spec.n_agents;
      max_singleton = std::max(max_singleton, v);
    }
    for (int i = 0; i < spec.n_agents; ++i) {
      switch (spec.cost_regime) {
        case CostRegime::Zero:
          instance.costs(i, j) = 0.0;
          break;
        case CostRegime::Low:
          instance.costs(i, j) = rng.uniform(0.0, 0.1 * mean_singleton);
          break;
        case CostRegime::Random:
          instance.costs(i, j) = rng.uniform(0.0, max_singleton);
          break;
      }
    }
  }
  return instance;
}

}  // namespace mpc
