#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "mpc/types.hpp"

namespace mpc {

/// A monotone set function mapping a team of agents to a success probability.
/// Four explicit representations are supported; all are normalized (empty set
/// maps to 0) and monotone because every stored entry is non-negative.
struct SuccessFunction {
  enum class Tag { Additive, BudgetAdditive, Coverage, Xos };

  Tag tag = Tag::Additive;
  Eigen::VectorXd values;                        // Additive / BudgetAdditive
  double budget = 0.0;                           // BudgetAdditive
  Eigen::VectorXd element_weights;               // Coverage
  std::vector<std::vector<int>> agent_elements;  // Coverage, one subset per agent
  Eigen::MatrixXd clauses;                       // Xos, one additive clause per row

  static SuccessFunction additive(Eigen::VectorXd v);
  static SuccessFunction budget_additive(Eigen::VectorXd v, double budget);
  static SuccessFunction coverage(Eigen::VectorXd element_weights,
                                  std::vector<std::vector<int>> agent_elements);
  static SuccessFunction xos(Eigen::MatrixXd clauses);

  int agent_count() const;

  /// Largest value the representation can reach, computed analytically:
  /// sum of values (additive), min(sum, budget) (budget-additive), total
  /// universe weight (coverage), max clause sum (XOS).
  double analytic_max() const;
};

/// Exact f(S). Agents out of range raise PreconditionError.
double value(const SuccessFunction& f, std::span<const int> agents);
double value(const SuccessFunction& f, const AgentSet& agents);

/// f({i}).
double singleton_value(const SuccessFunction& f, int agent);

/// f(S ∪ {i}) − f(S); requires i ∉ S.
double marginal(const SuccessFunction& f, int agent, const AgentSet& base);

/// Marginal of `agent` within `team` (which must contain it): f(T) − f(T∖{i}).
double marginal_within(const SuccessFunction& f, int agent, const AgentSet& team);

}  // namespace mpc
