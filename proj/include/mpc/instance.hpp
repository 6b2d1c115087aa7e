#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "mpc/success_function.hpp"

namespace mpc {

/// Problem data: agents, projects, per-agent-per-project costs, and one
/// success function per project. Immutable after construction; share freely
/// across threads.
struct Instance {
  int n_agents = 0;
  int n_projects = 0;
  Eigen::MatrixXd costs;  // n_agents x n_projects
  std::vector<SuccessFunction> functions;
};

/// Tunables for the approximation pipeline.
struct Params {
  /// Dominance threshold and demand-oracle accuracy parameter.
  double delta = 1.0 / 129.0;
  /// Binary-search width for the fractional solver. Defaults to
  /// (delta/2) * min positive singleton value of the instance, which keeps
  /// the strict bound epsilon < delta * min positive singleton.
  std::optional<double> epsilon;
  /// Simplex feasibility tolerance.
  double lp_tol = 1e-9;
  /// Marginal-preservation parameter handed to the scaling schedule.
  double scale_delta = 0.5;
  /// Target value fraction handed to the scaling schedule.
  double psi_factor = 1.0 / 128.0;
};

/// Smallest positive f_j({i}) over all projects and agents; +infinity when
/// every singleton is zero.
double min_positive_singleton(const Instance& instance);
double max_singleton(const Instance& instance);

/// Resolves Params::epsilon, enforcing epsilon < delta * min positive singleton.
double effective_epsilon(const Instance& instance, const Params& params);

/// Returns an empty list iff the instance is well formed. Each entry names
/// the offending field and the rule it breaks.
std::vector<std::string> validate(const Instance& instance);

/// JSON round trip. load_instance parses, checks the schema version, and
/// validates; any violation is an error.
Instance load_instance(const std::string& path);
void save_instance(const Instance& instance, const std::string& path);

/// Parse/serialize without touching the filesystem (schema version included).
Instance instance_from_json_text(const std::string& text);
std::string instance_to_json_text(const Instance& instance);

/// Serialize an allocation as a JSON array with null for unassigned agents.
std::string allocation_to_json_text(const Allocation& allocation);

}  // namespace mpc
