#include "mpc/success_function.hpp"

#include <algorithm>

#include "mpc/errors.hpp"

namespace mpc {

SuccessFunction SuccessFunction::additive(Eigen::VectorXd v) {
  SuccessFunction f;
  f.tag = Tag::Additive;
  f.values = std::move(v);
  return f;
}

SuccessFunction SuccessFunction::budget_additive(Eigen::VectorXd v, double budget) {
  SuccessFunction f;
  f.tag = Tag::BudgetAdditive;
  f.values = std::move(v);
  f.budget = budget;
  return f;
}

SuccessFunction SuccessFunction::coverage(Eigen::VectorXd element_weights,
                                          std::vector<std::vector<int>> agent_elements) {
  SuccessFunction f;
  f.tag = Tag::Coverage;
  f.element_weights = std::move(element_weights);
  f.agent_elements = std::move(agent_elements);
  return f;
}

SuccessFunction SuccessFunction::xos(Eigen::MatrixXd clauses) {
  SuccessFunction f;
  f.tag = Tag::Xos;
  f.clauses = std::move(clauses);
  return f;
}

int SuccessFunction::agent_count() const {
  switch (tag) {
    case Tag::Additive:
    case Tag::BudgetAdditive:
      return static_cast<int>(values.size());
    case Tag::Coverage:
      return static_cast<int>(agent_elements.size());
    case Tag::Xos:
      return static_cast<int>(clauses.cols());
  }
  return 0;
}

double SuccessFunction::analytic_max() const {
  switch (tag) {
    case Tag::Additive:
      return values.size() == 0 ? 0.0 : values.sum();
    case Tag::BudgetAdditive:
      return std::min(values.size() == 0 ? 0.0 : values.sum(), budget);
    case Tag::Coverage:
      return element_weights.size() == 0 ? 0.0 : element_weights.sum();
    case Tag::Xos: {
      if (clauses.rows() == 0) return 0.0;
      return clauses.rowwise().sum().maxCoeff();
    }
  }
  return 0.0;
}

namespace {

void check_agents(const SuccessFunction& f, std::span<const int> agents) {
  const int n = f.agent_count();
  for (int i : agents) {
    if (i < 0 || i >= n)
      throw PreconditionError("agent index " + std::to_string(i) + " out of range [0, " +
                              std::to_string(n) + ")");
  }
}

}  // namespace

double value(const SuccessFunction& f, std::span<const int> agents) {
  check_agents(f, agents);
  switch (f.tag) {
    case SuccessFunction::Tag::Additive: {
      double s = 0;
      for (int i : agents) s += f.values[i];
      return s;
    }
    case SuccessFunction::Tag::BudgetAdditive: {
      double s = 0;
      for (int i : agents) s += f.values[i];
      return std::min(s, f.budget);
    }
    case SuccessFunction::Tag::Coverage: {
      std::vector<char> covered(f.element_weights.size(), 0);
      double s = 0;
      for (int i : agents) {
        for (int e : f.agent_elements[i]) {
          if (!covered[e]) {
            covered[e] = 1;
            s += f.element_weights[e];
          }
        }
      }
      return s;
    }
    case SuccessFunction::Tag::Xos: {
      double best = 0;  // the empty sum of any clause
      for (Eigen::Index l = 0; l < f.clauses.rows(); ++l) {
        double s = 0;
        for (int i : agents) s += f.clauses(l, i);
        best = std::max(best, s);
      }
      return best;
    }
  }
  return 0.0;
}

double value(const SuccessFunction& f, const AgentSet& agents) {
  return value(f, std::span<const int>(agents));
}

double singleton_value(const SuccessFunction& f, int agent) {
  const int one[] = {agent};
  return value(f, std::span<const int>(one));
}

double marginal(const SuccessFunction& f, int agent, const AgentSet& base) {
  if (set_contains(base, agent))
    throw PreconditionError("marginal: agent " + std::to_string(agent) +
                            " already belongs to the base set");
  AgentSet with = base;
  with.insert(std::upper_bound(with.begin(), with.end(), agent), agent);
  return value(f, with) - value(f, base);
}

double marginal_within(const SuccessFunction& f, int agent, const AgentSet& team) {
  if (!set_contains(team, agent))
    throw PreconditionError("marginal_within: agent " + std::to_string(agent) +
                            " not in the team");
  return value(f, team) - value(f, set_without(team, agent));
}

}  // namespace mpc
