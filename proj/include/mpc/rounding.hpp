#pragma once

#include <optional>
#include <vector>

#include "mpc/instance.hpp"
#include "mpc/lp_engine.hpp"
#include "mpc/types.hpp"

namespace mpc {

/// One support set of a project's distribution, together with the estimate
/// and the team of the fractional column it came from. The witness pair is
/// what the scaling step needs downstream: `agents` stays a subset of
/// `witness_agents` through every restriction.
struct SupportEntry {
  AgentSet agents;
  double probability = 0.0;
  double witness_estimate = 0.0;
  AgentSet witness_agents;
};

/// Per-project distributions over teams. Probabilities within a project sum
/// to at most one; the remainder implicitly sits on the empty set.
struct SupportDistribution {
  std::vector<std::vector<SupportEntry>> projects;
};

/// Aggregates column weights over estimates per (project, team). The witness
/// estimate of a support set is the smallest contributing estimate.
SupportDistribution to_distributions(const FractionalSolution& solution,
                                     const Instance& instance);

/// Sum over chosen projects and support sets of probability * f_j(S ∩ agents).
double support_value(const SupportDistribution& dist, const Instance& instance,
                     const std::vector<int>& projects, const AgentSet& agents);

struct ProjectWitness {
  AgentSet support_agents;  // the un-restricted column team
  double estimate = 0.0;
};

struct RoundingResult {
  Allocation allocation;
  std::vector<std::optional<ProjectWitness>> witnesses;  // one per project
};

/// Deterministic rounding: scan (project, support set) pairs in ascending
/// order and allocate the first set whose value plus half the remaining
/// distributions' value keeps half the current total; then remove the
/// allocated agents from every other distribution and repeat. The output is
/// a disjoint partial allocation with total value at least half the
/// distributions' expected value, every team a subset of a support set.
RoundingResult round_distribution(const SupportDistribution& dist, const Instance& instance);

}  // namespace mpc
