#include "mpc/matching.hpp"

#include <limits>
#include <vector>

#include "mpc/errors.hpp"

namespace mpc {

namespace {

// Hungarian algorithm with potentials, minimization over perfect matchings of
// a square cost matrix. O(s^3), deterministic.
double hungarian_min_cost(const Eigen::MatrixXd& cost) {
  const int s = static_cast<int>(cost.rows());
  if (s == 0) return 0.0;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(s + 1, 0.0), v(s + 1, 0.0);
  std::vector<int> p(s + 1, 0), way(s + 1, 0);
  for (int i = 1; i <= s; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(s + 1, inf);
    std::vector<char> used(s + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = 0;
      double delta = inf;
      for (int j = 1; j <= s; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= s; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double total = 0.0;
  for (int j = 1; j <= s; ++j) total += cost(p[j] - 1, j - 1);
  return total;
}

}  // namespace

WeightedBipartiteGraph build_graph(const Instance& instance) {
  WeightedBipartiteGraph g;
  g.weights.resize(instance.n_agents, instance.n_projects);
  for (int i = 0; i < instance.n_agents; ++i)
    for (int j = 0; j < instance.n_projects; ++j) {
      const double w = singleton_value(instance.functions[j], i) - instance.costs(i, j);
      g.weights(i, j) = w > 0.0 ? w : 0.0;
    }
  return g;
}

double max_matching_weight(const Eigen::MatrixXd& weights) {
  const int n = static_cast<int>(weights.rows());
  const int m = static_cast<int>(weights.cols());
  if (n == 0 || m == 0) return 0.0;
  // Pad to a square so unmatched agents and projects pair with zero-weight
  // dummies; a min-cost perfect matching of -w is then a max-weight matching.
  const int s = n + m;
  Eigen::MatrixXd cost = Eigen::MatrixXd::Zero(s, s);
  cost.block(0, 0, n, m) = -weights;
  return -hungarian_min_cost(cost);
}

Allocation max_weight_matching(const WeightedBipartiteGraph& graph) {
  const int n = static_cast<int>(graph.weights.rows());
  const int m = static_cast<int>(graph.weights.cols());
  const double best = max_matching_weight(graph.weights);
  const double tol = 1e-9;

  // Fix agents one at a time, preferring the lowest project index whose
  // choice still completes to an optimal matching. Only strictly positive
  // edges are eligible, so zero-weight edges never enter the allocation.
  Allocation result(n);
  std::vector<char> project_used(m, 0);
  double fixed = 0.0;
  for (int i = 0; i < n; ++i) {
    const std::vector<int> rest_agents = [&] {
      std::vector<int> v;
      for (int a = i + 1; a < n; ++a) v.push_back(a);
      return v;
    }();
    auto completion = [&](int taken_project) {
      std::vector<int> rest_projects;
      for (int j = 0; j < m; ++j)
        if (!project_used[j] && j != taken_project) rest_projects.push_back(j);
      Eigen::MatrixXd sub(rest_agents.size(), rest_projects.size());
      for (std::size_t a = 0; a < rest_agents.size(); ++a)
        for (std::size_t b = 0; b < rest_projects.size(); ++b)
          sub(a, b) = graph.weights(rest_agents[a], rest_projects[b]);
      return max_matching_weight(sub);
    };
    for (int j = 0; j < m; ++j) {
      if (project_used[j] || !(graph.weights(i, j) > 0.0)) continue;
      if (fixed + graph.weights(i, j) + completion(j) >= best - tol) {
        result.assignment[i] = j;
        project_used[j] = 1;
        fixed += graph.weights(i, j);
        break;
      }
    }
  }
  return result;
}

}  // namespace mpc
