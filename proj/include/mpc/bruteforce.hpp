#pragma once

#include <utility>
#include <vector>

#include "mpc/instance.hpp"
#include "mpc/oracles.hpp"
#include "mpc/types.hpp"

namespace mpc {

/// Optimal allocation found by exhaustive enumeration, together with the
/// dominant-agent decomposition of its revenue. A project is flagged
/// dominant when some member of its optimal team contributes more than
/// delta times the team value by itself.
struct ExactOpt {
  Allocation best;
  double revenue = 0.0;
  std::vector<AgentSet> project_sets;
  std::vector<bool> dominant_flags;
  double revenue_dominant = 0.0;     // projects with a dominant agent
  double revenue_nondominant = 0.0;  // projects without one
};

/// Enumerates every assignment vector ((m+1)^n of them, guarded at 1e7).
/// Teams containing a zero-marginal agent are skipped as infeasible. Among
/// optima the lexicographically smallest assignment vector wins.
ExactOpt exact_opt(const Instance& instance, const Params& params);

/// The optimal allocation restricted to projects without a dominant agent.
Allocation restrict_to_nondominant(const ExactOpt& opt);

/// Exhaustive maximizer of min{f(S), cap} − p(S) over all subsets (n <= 20).
std::pair<AgentSet, double> exact_capped_demand(const SuccessFunction& f, double cap,
                                                const PriceVector& prices);

/// f evaluated on every subset mask of {0,..,n-1}; index by bitmask.
std::vector<double> subset_value_table(const SuccessFunction& f, int n);

/// Revenue of a single project team given a subset-value table; -infinity
/// when some member has zero marginal contribution.
double project_revenue_from_table(const std::vector<double>& table, const Eigen::MatrixXd& costs,
                                  int project, std::uint32_t team_mask);

}  // namespace mpc
