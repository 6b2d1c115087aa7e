#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "mpc/instance.hpp"
#include "mpc/lp_engine.hpp"
#include "mpc/types.hpp"

namespace mpc {

enum class Method { DominantMatching, LpPipeline, BruteForce };

std::string method_name(Method method);

struct Payment {
  int agent = 0;
  int project = 0;
  double amount = 0.0;
};

/// An allocation with its induced contract: the payment to each allocated
/// agent is their cost divided by their marginal contribution to the team,
/// and a project's revenue is its value times one minus the payment shares.
struct ContractReport {
  Allocation allocation;
  std::vector<Payment> payments;
  Eigen::VectorXd per_project_revenue;
  double total_revenue = 0.0;
  Method method = Method::BruteForce;
  std::optional<LpDiagnostics> lp;
};

/// Computes payments and revenue for a given allocation. An allocated agent
/// whose marginal contribution is zero cannot be incentivized and raises
/// ZeroMarginalError.
ContractReport revenue(const Instance& instance, const Allocation& allocation,
                       Method method = Method::BruteForce);

/// Full approximation pipeline: the best of the dominant-agent matching and
/// the LP -> rounding -> scaling chain, with negative-revenue candidates
/// replaced by the empty allocation before comparison.
ContractReport solve(const Instance& instance, const Params& params);

std::string report_to_json_text(const ContractReport& report, bool include_lp_diagnostics);

}  // namespace mpc
