#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace mpc {

/// A team of agents, kept sorted ascending with no duplicates.
using AgentSet = std::vector<int>;

inline bool set_contains(const AgentSet& s, int agent) {
  return std::binary_search(s.begin(), s.end(), agent);
}

inline AgentSet set_without(const AgentSet& s, int agent) {
  AgentSet out;
  out.reserve(s.size());
  for (int i : s)
    if (i != agent) out.push_back(i);
  return out;
}

inline AgentSet set_difference(const AgentSet& a, const AgentSet& b) {
  AgentSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline AgentSet set_intersection(const AgentSet& a, const AgentSet& b) {
  AgentSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool set_is_subset(const AgentSet& sub, const AgentSet& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

inline AgentSet set_from_mask(std::uint32_t mask) {
  AgentSet out;
  for (int i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1u) out.push_back(i);
  return out;
}

inline std::uint32_t mask_from_set(const AgentSet& s) {
  std::uint32_t mask = 0;
  for (int i : s) mask |= (1u << i);
  return mask;
}

constexpr int kUnassigned = -1;

/// A partial partition of agents into projects: each agent carries the index
/// of its project or kUnassigned. Disjointness of project teams holds by
/// construction.
struct Allocation {
  Allocation() = default;
  explicit Allocation(int n_agents) : assignment(n_agents, kUnassigned) {}

  std::vector<int> assignment;

  int size() const { return static_cast<int>(assignment.size()); }

  bool empty() const {
    return std::all_of(assignment.begin(), assignment.end(),
                       [](int a) { return a == kUnassigned; });
  }

  AgentSet project_set(int project) const {
    AgentSet out;
    for (int i = 0; i < size(); ++i)
      if (assignment[i] == project) out.push_back(i);
    return out;
  }

  std::vector<AgentSet> project_sets(int n_projects) const {
    std::vector<AgentSet> out(n_projects);
    for (int i = 0; i < size(); ++i)
      if (assignment[i] != kUnassigned) out[assignment[i]].push_back(i);
    return out;
  }

  friend bool operator==(const Allocation& a, const Allocation& b) {
    return a.assignment == b.assignment;
  }
};

/// Orders allocations with unassigned entries sorting after any project index.
inline bool allocation_lex_less(const Allocation& a, const Allocation& b, int n_projects) {
  auto key = [n_projects](int e) { return e == kUnassigned ? n_projects : e; };
  for (int i = 0; i < a.size() && i < b.size(); ++i) {
    if (key(a.assignment[i]) != key(b.assignment[i]))
      return key(a.assignment[i]) < key(b.assignment[i]);
  }
  return a.size() < b.size();
}

}  // namespace mpc
