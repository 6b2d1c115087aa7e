#include "mpc/bruteforce.hpp"

#include <cmath>
#include <limits>

#include "mpc/errors.hpp"

namespace mpc {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

std::vector<double> subset_value_table(const SuccessFunction& f, int n) {
  if (n > 22) throw SizeGuardError("subset table limited to 22 agents");
  std::vector<double> table(std::size_t(1) << n);
  for (std::uint32_t mask = 0; mask < table.size(); ++mask)
    table[mask] = value(f, set_from_mask(mask));
  return table;
}

double project_revenue_from_table(const std::vector<double>& table, const Eigen::MatrixXd& costs,
                                  int project, std::uint32_t team_mask) {
  if (team_mask == 0) return 0.0;
  const double team_value = table[team_mask];
  double paid = 0.0;
  for (std::uint32_t rest = team_mask; rest != 0;) {
    const int i = __builtin_ctz(rest);
    rest &= rest - 1;
    const double margin = team_value - table[team_mask & ~(1u << i)];
    if (margin <= 0.0) return kNegInf;
    paid += costs(i, project) / margin;
  }
  return (1.0 - paid) * team_value;
}

ExactOpt exact_opt(const Instance& instance, const Params& params) {
  const int n = instance.n_agents;
  const int m = instance.n_projects;
  double space = 1.0;
  for (int i = 0; i < n; ++i) space *= static_cast<double>(m + 1);
  if (space > 1e7)
    throw SizeGuardError("exact_opt: (m+1)^n exceeds 1e7; instance too large to enumerate");

  std::vector<std::vector<double>> tables;
  tables.reserve(m);
  for (const auto& f : instance.functions) tables.push_back(subset_value_table(f, n));

  // Assignment vectors enumerated as base-(m+1) counters, digit m meaning
  // unassigned; the first strict maximum seen is the lexicographically
  // smallest optimum for the unassigned-last order.
  std::vector<int> digits(n, 0);
  std::vector<int> best_digits;
  double best_revenue = kNegInf;
  std::vector<std::uint32_t> team_masks(m, 0);
  for (;;) {
    std::fill(team_masks.begin(), team_masks.end(), 0u);
    for (int i = 0; i < n; ++i)
      if (digits[i] < m) team_masks[digits[i]] |= (1u << i);
    double revenue = 0.0;
    for (int j = 0; j < m && revenue > kNegInf; ++j)
      revenue += project_revenue_from_table(tables[j], instance.costs, j, team_masks[j]);
    if (revenue > best_revenue) {
      best_revenue = revenue;
      best_digits = digits;
    }
    int pos = n - 1;
    while (pos >= 0 && digits[pos] == m) digits[pos--] = 0;
    if (pos < 0) break;
    ++digits[pos];
  }

  ExactOpt result;
  result.best = Allocation(n);
  for (int i = 0; i < n; ++i)
    result.best.assignment[i] = best_digits[i] == m ? kUnassigned : best_digits[i];
  result.revenue = best_revenue;
  result.project_sets = result.best.project_sets(m);
  result.dominant_flags.assign(m, false);
  for (int j = 0; j < m; ++j) {
    const AgentSet& team = result.project_sets[j];
    if (team.empty()) continue;
    const double team_value = value(instance.functions[j], team);
    const double project_revenue =
        project_revenue_from_table(tables[j], instance.costs, j, mask_from_set(team));
    bool dominant = false;
    for (int i : team)
      if (singleton_value(instance.functions[j], i) > params.delta * team_value) dominant = true;
    result.dominant_flags[j] = dominant;
    if (dominant)
      result.revenue_dominant += project_revenue;
    else
      result.revenue_nondominant += project_revenue;
  }
  return result;
}

Allocation restrict_to_nondominant(const ExactOpt& opt) {
  Allocation restricted(opt.best.size());
  for (int i = 0; i < opt.best.size(); ++i) {
    const int j = opt.best.assignment[i];
    if (j != kUnassigned && !opt.dominant_flags[j]) restricted.assignment[i] = j;
  }
  return restricted;
}

std::pair<AgentSet, double> exact_capped_demand(const SuccessFunction& f, double cap,
                                                const PriceVector& prices) {
  const int n = f.agent_count();
  if (n > 20) throw SizeGuardError("exact_capped_demand limited to 20 agents");
  check_prices(prices);
  auto table = subset_value_table(f, n);

  std::uint32_t infinite_mask = 0;
  for (int i = 0; i < n; ++i)
    if (std::isinf(prices[i])) infinite_mask |= (1u << i);

  std::vector<double> price_sums(table.size(), 0.0);
  for (std::uint32_t mask = 1; mask < price_sums.size(); ++mask) {
    const int low = __builtin_ctz(mask);
    const double p = std::isinf(prices[low]) ? 0.0 : prices[low];
    price_sums[mask] = price_sums[mask & (mask - 1)] + p;
  }

  std::uint32_t best_mask = 0;
  double best_utility = std::min(0.0, cap);  // empty set
  for (std::uint32_t mask = 1; mask < table.size(); ++mask) {
    if (mask & infinite_mask) continue;
    const double utility = std::min(table[mask], cap) - price_sums[mask];
    if (utility > best_utility) {
      best_utility = utility;
      best_mask = mask;
    }
  }
  return {set_from_mask(best_mask), best_utility};
}

}  // namespace mpc
