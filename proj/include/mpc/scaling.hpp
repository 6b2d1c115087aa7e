#pragma once

#include <utility>

#include "mpc/instance.hpp"
#include "mpc/rounding.hpp"
#include "mpc/success_function.hpp"
#include "mpc/types.hpp"

namespace mpc {

/// Input for one scaling run: shrink `team` (a subset of `ground`) down to a
/// target value `psi` while keeping every survivor's marginal within the
/// result at least `delta` times its marginal within `ground`.
struct ScalingInput {
  SuccessFunction f;
  AgentSet team;    // T, the set being shrunk
  AgentSet ground;  // S, the reference superset for marginals
  double delta = 0.5;
  double psi = 0.0;  // 0 <= psi < f(team) after stripping
};

/// Drops from `ground` (and `team`) every agent whose marginal within
/// `ground` is zero, iterated until every survivor has a strictly positive
/// marginal.
std::pair<AgentSet, AgentSet> strip_zero_marginals(const SuccessFunction& f, const AgentSet& team,
                                                   const AgentSet& ground);

/// Removal schedule: repeatedly delete the team member minimizing the ratio
/// of its current-team marginal to its ground marginal, then pick the state
/// just before the ratio-maximizing step inside the window where the value
/// first crosses psi and then drops by another (1-delta) factor. The result
/// U satisfies (1-delta)*psi <= f(U) <= psi + max singleton of the team, and
/// f(i | U\{i}) >= delta * f(i | ground\{i}) for every member.
AgentSet scale(const ScalingInput& input);

/// Applies the schedule project by project to a rounded allocation, with
/// psi = psi_factor * f_j(T_j) and the configured scale delta. Witnesses must
/// satisfy the fractional solver's output contract; teams whose value
/// vanishes after stripping come back empty.
Allocation apply_scaling(const Instance& instance, const Allocation& rounded,
                         const std::vector<std::optional<ProjectWitness>>& witnesses,
                         const Params& params);

}  // namespace mpc
