#pragma once

#include <Eigen/Dense>

#include "mpc/instance.hpp"
#include "mpc/types.hpp"

namespace mpc {

/// Agent-project graph with edge weights max{f_j({i}) - c_ij, 0}: the revenue
/// of assigning a single agent to a project, clamped at zero.
struct WeightedBipartiteGraph {
  Eigen::MatrixXd weights;  // n_agents x n_projects
};

WeightedBipartiteGraph build_graph(const Instance& instance);

/// Maximum total weight over matchings of the given dense bipartite graph
/// (agents may stay unmatched at weight 0).
double max_matching_weight(const Eigen::MatrixXd& weights);

/// Maximum-weight matching as an allocation: at most one agent per project,
/// zero-weight edges never included. Among optima, returns the
/// lexicographically smallest assignment vector (unassigned sorting last).
Allocation max_weight_matching(const WeightedBipartiteGraph& graph);

}  // namespace mpc
