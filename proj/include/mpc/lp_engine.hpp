#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "mpc/instance.hpp"
#include "mpc/types.hpp"

namespace mpc {

/// Which capped-demand oracle backs the separation oracle: exact demand
/// queries (additive/XOS instances) or value queries via distorted greedy
/// (submodular instances: additive/budget-additive/coverage).
enum class OraclePath { Demand, ValueQuery };

/// Chooses the path from the instance's function tags; mixing XOS with
/// coverage or budget-additive functions is unsupported.
OraclePath oracle_path(const Instance& instance);

/// One fractional-allocation variable: team `agents` considered for
/// `project` under reward estimate `estimate`, carrying weight `weight`.
struct Column {
  int project = 0;
  double estimate = 0.0;
  AgentSet agents;
  double weight = 0.0;
};

struct LpDiagnostics {
  OraclePath path = OraclePath::Demand;
  int pool_columns = 0;
  int probes = 0;
  int oracle_calls = 0;
  double gamma_lower = 0.0;
  double gamma_upper = 0.0;
  double epsilon = 0.0;
};

/// Output of the fractional solver. Feasibility: per project and per agent
/// the column weights sum to at most one. Every positive column's team fits
/// its estimate (value at most (1+delta)*estimate, singletons at most
/// delta*estimate) and every member's marginal covers its posted price.
struct FractionalSolution {
  std::vector<Column> columns;
  /// Objective including the estimate penalty term (the solver's own
  /// maximand on the demand path) or the (1-1/e)-weighted variant on the
  /// value-query path.
  double objective_with_penalty = 0.0;
  /// Objective without the penalty: sum of weight * (min{f(S),x} − price(S)).
  double objective_no_penalty = 0.0;
  LpDiagnostics diagnostics;
};

struct DualPoint {
  Eigen::VectorXd alpha;  // one per project, >= 0
  Eigen::VectorXd beta;   // one per agent, >= 0
};

struct SeparationResult {
  bool all_satisfied = true;
  int project = -1;
  double estimate = 0.0;
  AgentSet agents;
};

/// Reward-estimate grid for one project: the doubling ladder
/// {2^k * f_j({i}) : 0 <= k <= ceil(log2 n), f_j({i}) > 0}, deduplicated and
/// sorted ascending. Zero never appears (its columns cannot help).
std::vector<double> estimate_grid(const Instance& instance, int project);

/// Posted price of an agent in a column: sqrt(estimate * cost) / (2*sqrt(2)).
double column_price(double estimate, double cost);

/// Utility slack factor 1 + 1/(1-delta) of the approximate demand oracle.
double demand_slack_factor(double delta);

/// Checks all dual constraints approximately: for each project and grid
/// estimate it prices agents at column_price + beta (infinite for agents too
/// heavy for the estimate), queries the capped demand, and reports the first
/// estimate, in (project, estimate) order, whose capped utility exceeds what
/// alpha covers. An all-satisfied answer certifies every dual constraint.
SeparationResult separation_oracle(const Instance& instance, const Params& params,
                                   const DualPoint& dual);

/// Approximately optimal fractional allocation, computed by binary search on
/// the dual objective bound with cutting planes over a growing column pool,
/// a dense-simplex restricted primal, and the two cleanup loops (drop agents
/// whose marginal is below their posted price; shrink teams whose value
/// exceeds (1+delta) times the estimate).
FractionalSolution solve_fractional_allocation(const Instance& instance, const Params& params);

/// Feasibility violations of a fractional solution (empty when feasible).
std::vector<std::string> check_fractional_feasibility(const Instance& instance,
                                                      const FractionalSolution& solution,
                                                      double tol = 1e-9);

/// Plain-text dump of the solution's columns for debugging.
std::string describe_columns(const Instance& instance, const FractionalSolution& solution);

}  // namespace mpc
