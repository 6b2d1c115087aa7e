#include "mpc/pipeline.hpp"

#include "json.hpp"
#include "mpc/errors.hpp"
#include "mpc/matching.hpp"
#include "mpc/rounding.hpp"
#include "mpc/scaling.hpp"

namespace mpc {

std::string method_name(Method method) {
  switch (method) {
    case Method::DominantMatching:
      return "DominantMatching";
    case Method::LpPipeline:
      return "LpPipeline";
    case Method::BruteForce:
      return "BruteForce";
  }
  return "?";
}

ContractReport revenue(const Instance& instance, const Allocation& allocation, Method method) {
  if (allocation.size() != instance.n_agents)
    throw PreconditionError("revenue: allocation length does not match the instance");
  for (int a : allocation.assignment)
    if (a != kUnassigned && (a < 0 || a >= instance.n_projects))
      throw PreconditionError("revenue: allocation references an unknown project");

  ContractReport report;
  report.allocation = allocation;
  report.method = method;
  report.per_project_revenue = Eigen::VectorXd::Zero(instance.n_projects);

  const auto teams = allocation.project_sets(instance.n_projects);
  for (int j = 0; j < instance.n_projects; ++j) {
    const AgentSet& team = teams[j];
    if (team.empty()) continue;
    const SuccessFunction& f = instance.functions[j];
    const double team_value = value(f, team);
    double shares = 0.0;
    for (int i : team) {
      const double margin = team_value - value(f, set_without(team, i));
      if (margin <= 0.0) throw ZeroMarginalError(i, j);
      const double t = instance.costs(i, j) / margin;
      report.payments.push_back(Payment{i, j, t});
      shares += t;
    }
    report.per_project_revenue[j] = (1.0 - shares) * team_value;
  }
  report.total_revenue = report.per_project_revenue.sum();
  return report;
}

ContractReport solve(const Instance& instance, const Params& params) {
  auto violations = validate(instance);
  if (!violations.empty()) throw ValidationError(std::move(violations));

  ContractReport matched =
      revenue(instance, max_weight_matching(build_graph(instance)), Method::DominantMatching);

  FractionalSolution fractional = solve_fractional_allocation(instance, params);
  SupportDistribution dist = to_distributions(fractional, instance);
  RoundingResult rounded = round_distribution(dist, instance);
  Allocation scaled = apply_scaling(instance, rounded.allocation, rounded.witnesses, params);
  ContractReport lp_report = revenue(instance, scaled, Method::LpPipeline);
  lp_report.lp = fractional.diagnostics;
  matched.lp = fractional.diagnostics;  // whichever branch wins carries them

  // The principal can always contract nothing, so a candidate that went
  // negative is replaced by the empty allocation.
  auto floor_at_zero = [&](ContractReport& report) {
    if (report.total_revenue < 0.0) {
      const Method method = report.method;
      const auto lp = report.lp;
      report = revenue(instance, Allocation(instance.n_agents), method);
      report.lp = lp;
    }
  };
  floor_at_zero(matched);
  floor_at_zero(lp_report);

  return lp_report.total_revenue > matched.total_revenue ? lp_report : matched;
}

std::string report_to_json_text(const ContractReport& report, bool include_lp_diagnostics) {
  nlohmann::ordered_json j;
  j["method"] = method_name(report.method);
  nlohmann::ordered_json alloc = nlohmann::ordered_json::array();
  for (int a : report.allocation.assignment) {
    if (a == kUnassigned)
      alloc.push_back(nullptr);
    else
      alloc.push_back(a);
  }
  j["allocation"] = alloc;
  nlohmann::ordered_json payments = nlohmann::ordered_json::array();
  for (const auto& p : report.payments)
    payments.push_back({{"agent", p.agent}, {"project", p.project}, {"amount", p.amount}});
  j["payments"] = payments;
  nlohmann::ordered_json revenues = nlohmann::ordered_json::array();
  for (Eigen::Index k = 0; k < report.per_project_revenue.size(); ++k)
    revenues.push_back(report.per_project_revenue[k]);
  j["per_project_revenue"] = revenues;
  j["total_revenue"] = report.total_revenue;
  if (include_lp_diagnostics && report.lp.has_value()) {
    const LpDiagnostics& d = *report.lp;
    j["lp"] = {{"path", d.path == OraclePath::Demand ? "demand" : "value_query"},
               {"pool_columns", d.pool_columns},
               {"probes", d.probes},
               {"oracle_calls", d.oracle_calls},
               {"gamma_lower", d.gamma_lower},
               {"gamma_upper", d.gamma_upper},
               {"epsilon", d.epsilon}};
  }
  return j.dump(2) + "\n";
}

}  // namespace mpc
