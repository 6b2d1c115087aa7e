#include "mpc/rounding.hpp"

#include <algorithm>
#include <map>

#include "mpc/errors.hpp"

namespace mpc {

namespace {
constexpr double kRoundTol = 1e-9;
}

SupportDistribution to_distributions(const FractionalSolution& solution,
                                     const Instance& instance) {
  auto violations = check_fractional_feasibility(instance, solution);
  if (!violations.empty()) throw ValidationError(std::move(violations));

  // Columns sorted by (project, estimate, team) make the smallest estimate
  // the first contributor per (project, team).
  std::vector<const Column*> ordered;
  ordered.reserve(solution.columns.size());
  for (const auto& c : solution.columns) ordered.push_back(&c);
  std::sort(ordered.begin(), ordered.end(), [](const Column* a, const Column* b) {
    return std::tie(a->project, a->estimate, a->agents) <
           std::tie(b->project, b->estimate, b->agents);
  });

  SupportDistribution dist;
  dist.projects.resize(instance.n_projects);
  std::vector<std::map<AgentSet, std::size_t>> seen(instance.n_projects);
  for (const Column* c : ordered) {
    if (c->agents.empty() || c->weight <= 0.0) continue;  // mass on the empty set is implicit
    auto& project_entries = dist.projects[c->project];
    auto [it, inserted] = seen[c->project].try_emplace(c->agents, project_entries.size());
    if (inserted) {
      project_entries.push_back(SupportEntry{c->agents, c->weight, c->estimate, c->agents});
    } else {
      project_entries[it->second].probability += c->weight;
    }
  }
  // Canonical support order: by team, ascending.
  for (auto& entries : dist.projects)
    std::sort(entries.begin(), entries.end(),
              [](const SupportEntry& a, const SupportEntry& b) { return a.agents < b.agents; });
  return dist;
}

double support_value(const SupportDistribution& dist, const Instance& instance,
                     const std::vector<int>& projects, const AgentSet& agents) {
  double total = 0.0;
  for (int j : projects)
    for (const auto& entry : dist.projects[j])
      total += entry.probability *
               value(instance.functions[j], set_intersection(entry.agents, agents));
  return total;
}

RoundingResult round_distribution(const SupportDistribution& dist, const Instance& instance) {
  const int m = instance.n_projects;
  RoundingResult result;
  result.allocation = Allocation(instance.n_agents);
  result.witnesses.assign(m, std::nullopt);

  // Working copy; supports shrink as agents get allocated elsewhere.
  std::vector<std::vector<SupportEntry>> cur = dist.projects;
  std::vector<int> active;
  for (int j = 0; j < m; ++j) active.push_back(j);

  auto current_value = [&](int skip_project, const AgentSet& removed) {
    double total = 0.0;
    for (int j : active) {
      if (j == skip_project) continue;
      for (const auto& entry : cur[j])
        total += entry.probability *
                 value(instance.functions[j], set_difference(entry.agents, removed));
    }
    return total;
  };

  for (;;) {
    bool any_entries = false;
    for (int j : active) any_entries |= !cur[j].empty();
    if (!any_entries || active.empty()) break;

    const double val_all = current_value(-1, {});
    bool found = false;
    for (std::size_t a = 0; a < active.size() && !found; ++a) {
      const int j = active[a];
      for (const auto& entry : cur[j]) {
        const double rest = current_value(j, entry.agents);
        if (value(instance.functions[j], entry.agents) + 0.5 * rest >=
            0.5 * val_all - kRoundTol) {
          for (int i : entry.agents) result.allocation.assignment[i] = j;
          result.witnesses[j] = ProjectWitness{entry.witness_agents, entry.witness_estimate};
          // Restrict the remaining distributions: remove the allocated
          // agents, merge support sets that collapse together, drop empties.
          const AgentSet taken = entry.agents;
          active.erase(active.begin() + static_cast<long>(a));
          for (int other : active) {
            std::vector<SupportEntry> rebuilt;
            std::map<AgentSet, std::size_t> where;
            for (const auto& e : cur[other]) {
              AgentSet shrunk = set_difference(e.agents, taken);
              if (shrunk.empty()) continue;
              auto [it, inserted] = where.try_emplace(shrunk, rebuilt.size());
              if (inserted) {
                rebuilt.push_back(
                    SupportEntry{std::move(shrunk), e.probability, e.witness_estimate,
                                 e.witness_agents});
              } else {
                rebuilt[it->second].probability += e.probability;
              }
            }
            cur[other] = std::move(rebuilt);
          }
          found = true;
          break;
        }
      }
    }
    if (!found)
      throw SolverError(
          "rounding: no support set passed the acceptance test; this indicates numerical "
          "drift beyond tolerance");
  }
  return result;
}

}  // namespace mpc
