#include "mpc/scaling.hpp"

#include <cmath>
#include <limits>

#include "mpc/errors.hpp"
#include "mpc/lp_engine.hpp"

namespace mpc {

std::pair<AgentSet, AgentSet> strip_zero_marginals(const SuccessFunction& f, const AgentSet& team,
                                                   const AgentSet& ground) {
  // Removing a batch of zero-marginal agents can zero out a survivor's
  // marginal on XOS functions, so iterate until every survivor contributes.
  AgentSet kept = ground;
  for (;;) {
    AgentSet next;
    for (int i : kept)
      if (marginal_within(f, i, kept) > 0.0) next.push_back(i);
    if (next.size() == kept.size()) break;
    kept = std::move(next);
  }
  return {set_intersection(team, kept), kept};
}

AgentSet scale(const ScalingInput& input) {
  if (!set_is_subset(input.team, input.ground))
    throw PreconditionError("scale: team must be a subset of the ground set");
  if (!(input.delta > 0.0 && input.delta <= 1.0))
    throw PreconditionError("scale: delta must lie in (0,1]");
  if (input.psi < 0.0) throw PreconditionError("scale: psi must be non-negative");

  const SuccessFunction& f = input.f;
  auto [team, ground] = strip_zero_marginals(f, input.team, input.ground);
  if (!(input.psi < value(f, team)))
    throw PreconditionError("scale: psi must be strictly below the team value");

  std::vector<double> ground_marginal(f.agent_count(), 0.0);
  for (int i : ground) ground_marginal[i] = marginal_within(f, i, ground);

  // states[s] is the team after s removals; ratios[s] records the removed
  // agent's marginal ratio at step s (1-indexed).
  std::vector<AgentSet> states{team};
  std::vector<double> state_value{value(f, team)};
  std::vector<double> ratios{std::numeric_limits<double>::quiet_NaN()};
  AgentSet current = team;
  while (!current.empty()) {
    int pick = -1;
    double pick_ratio = std::numeric_limits<double>::infinity();
    for (int i : current) {
      const double r = marginal_within(f, i, current) / ground_marginal[i];
      if (r < pick_ratio) {
        pick_ratio = r;
        pick = i;
      }
    }
    const AgentSet next = set_without(current, pick);
    const double removed_marginal = state_value.back() - value(f, next);
    ratios.push_back(removed_marginal / ground_marginal[pick]);
    current = next;
    states.push_back(current);
    state_value.push_back(value(f, current));
  }

  std::size_t first_below = 1;  // state_value[0] > psi by the precondition
  while (state_value[first_below] > input.psi) ++first_below;
  const double anchor = state_value[first_below - 1];
  std::size_t window_end = first_below;
  while (state_value[window_end] > (1.0 - input.delta) * anchor) ++window_end;

  std::size_t best_step = first_below;
  for (std::size_t s = first_below; s <= window_end; ++s)
    if (ratios[s] > ratios[best_step]) best_step = s;
  return states[best_step - 1];
}

Allocation apply_scaling(const Instance& instance, const Allocation& rounded,
                         const std::vector<std::optional<ProjectWitness>>& witnesses,
                         const Params& params) {
  const int m = instance.n_projects;
  Allocation out(instance.n_agents);
  const double tol = 1e-9;

  for (int j = 0; j < m; ++j) {
    const AgentSet team = rounded.project_set(j);
    if (team.empty()) continue;
    if (!witnesses[j].has_value())
      throw PreconditionError("apply_scaling: project " + std::to_string(j) +
                              " has an allocated team but no witness column");
    const ProjectWitness& witness = *witnesses[j];
    const SuccessFunction& f = instance.functions[j];

    if (!set_is_subset(team, witness.support_agents))
      throw PreconditionError("apply_scaling: project " + std::to_string(j) +
                              ": team is not contained in its witness team");
    if (value(f, witness.support_agents) > (1.0 + params.delta) * witness.estimate + tol)
      throw PreconditionError("apply_scaling: project " + std::to_string(j) +
                              ": witness value exceeds (1+delta) * estimate");
    for (int i : witness.support_agents) {
      if (marginal_within(f, i, witness.support_agents) <
          column_price(witness.estimate, instance.costs(i, j)) - tol)
        throw PreconditionError("apply_scaling: project " + std::to_string(j) + ": agent " +
                                std::to_string(i) +
                                " marginal falls below its posted price in the witness");
    }

    auto [stripped_team, stripped_ground] = strip_zero_marginals(f, team, witness.support_agents);
    const double team_value = value(f, stripped_team);
    if (team_value <= 0.0) continue;  // nothing worth keeping

    ScalingInput si{f, stripped_team, stripped_ground, params.scale_delta,
                    params.psi_factor * team_value};
    for (int i : scale(si)) out.assignment[i] = j;
  }
  return out;
}

}  // namespace mpc
