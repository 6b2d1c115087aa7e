#include "mpc/capped_demand.hpp"

#include <cmath>
#include <limits>

#include "mpc/errors.hpp"

namespace mpc {

namespace {

constexpr double kTieMargin = 1e-12;   // prefer the earlier candidate on near-ties
constexpr double kGammaFloor = 1e-12;  // numerical stop for the bracket width

// Demand under prices divided by gamma. At gamma = 0 every positive price
// becomes infinite (demand of the empty set); zero prices stay zero.
AgentSet demand_with_scaled_prices(const SuccessFunction& f, const PriceVector& prices,
                                   double gamma) {
  const double inf = std::numeric_limits<double>::infinity();
  PriceVector scaled(prices.size());
  for (Eigen::Index i = 0; i < prices.size(); ++i) {
    if (std::isinf(prices[i]))
      scaled[i] = inf;
    else if (prices[i] == 0.0)
      scaled[i] = 0.0;
    else
      scaled[i] = gamma == 0.0 ? inf : prices[i] / gamma;
  }
  return demand(f, scaled);
}

double linear_price(const PriceVector& prices, const AgentSet& s) {
  double total = 0.0;
  for (int i : s) total += prices[i];
  return total;
}

}  // namespace

double capped_utility(const SuccessFunction& f, double cap, const PriceVector& prices,
                      const AgentSet& s) {
  for (int i : s)
    if (std::isinf(prices[i])) return -std::numeric_limits<double>::infinity();
  return std::min(value(f, s), cap) - linear_price(prices, s);
}

CappedDemandTrace capped_demand_trace(const CappedQuery& query) {
  const SuccessFunction& f = query.f;
  const double x = query.cap;
  const double delta = query.delta;
  check_prices(query.prices);
  if (!(x > 0.0)) throw PreconditionError("capped demand: cap must be positive");
  if (!(delta > 0.0 && delta < 1.0))
    throw PreconditionError("capped demand: delta must lie in (0,1)");
  for (int i = 0; i < f.agent_count(); ++i) {
    if (!std::isinf(query.prices[i]) && singleton_value(f, i) > delta * x)
      throw PreconditionError("capped demand: agent " + std::to_string(i) +
                              " has singleton value above delta * cap");
  }

  CappedDemandTrace trace;
  AgentSet s_high = demand(f, query.prices);
  if (value(f, s_high) <= x) {
    trace.result = s_high;
    trace.early_exit = true;
    trace.s_high = std::move(s_high);
    return trace;
  }

  AgentSet s_low;  // demand at gamma = 0 is the empty set
  double gamma_low = 0.0, gamma_high = 1.0;
  while (gamma_high - gamma_low >= delta && gamma_high - gamma_low >= kGammaFloor) {
    const double gamma = 0.5 * (gamma_low + gamma_high);
    AgentSet probe = demand_with_scaled_prices(f, query.prices, gamma);
    if (value(f, probe) > x) {
      s_high = std::move(probe);
      gamma_high = gamma;
    } else {
      s_low = std::move(probe);
      gamma_low = gamma;
    }
  }

  // Greedily split the over-cap set (ascending agent order) into blocks that
  // each reach (1-delta)*x, stopping once the blocks' total value covers it.
  const double high_value = value(f, s_high);
  std::vector<AgentSet> blocks(1);
  double closed_sum = 0.0;
  for (int i : s_high) {
    blocks.back().push_back(i);
    const double block_value = value(f, blocks.back());
    if (closed_sum + block_value >= high_value) break;
    if (block_value >= (1.0 - delta) * x) {
      closed_sum += block_value;
      blocks.emplace_back();
    }
  }

  int best_block = 0;
  double best_block_utility = demand_utility(f, query.prices, blocks[0]);
  for (std::size_t b = 1; b < blocks.size(); ++b) {
    const double u = demand_utility(f, query.prices, blocks[b]);
    if (u > best_block_utility + kTieMargin) {
      best_block_utility = u;
      best_block = static_cast<int>(b);
    }
  }

  const double low_utility = demand_utility(f, query.prices, s_low);
  trace.result = best_block_utility > low_utility + kTieMargin ? blocks[best_block] : s_low;
  trace.s_low = std::move(s_low);
  trace.s_high = std::move(s_high);
  trace.gamma_low = gamma_low;
  trace.gamma_high = gamma_high;
  trace.blocks = std::move(blocks);
  return trace;
}

AgentSet capped_demand(const CappedQuery& query) { return capped_demand_trace(query).result; }

AgentSet capped_demand_submodular(const SuccessFunction& f, double cap,
                                  const PriceVector& prices) {
  switch (f.tag) {
    case SuccessFunction::Tag::Additive:
    case SuccessFunction::Tag::BudgetAdditive:
    case SuccessFunction::Tag::Coverage:
      break;
    default:
      throw PreconditionError("capped_demand_submodular: function tag is not submodular");
  }
  check_prices(prices);
  if (!(cap > 0.0)) throw PreconditionError("capped demand: cap must be positive");

  AgentSet ground;
  for (int i = 0; i < f.agent_count(); ++i)
    if (!std::isinf(prices[i])) ground.push_back(i);
  const int n = static_cast<int>(ground.size());
  if (n == 0) return {};

  // Distorted greedy for a monotone submodular gain minus a modular price:
  // n rounds, round k weighting the capped marginal by (1 - 1/n)^(n-k).
  AgentSet chosen;
  double chosen_value = 0.0;  // min{f(chosen), cap}
  for (int round = 1; round <= n; ++round) {
    const double distortion = std::pow(1.0 - 1.0 / n, n - round);
    int best = -1;
    double best_gain = 0.0;
    for (int i : ground) {
      if (set_contains(chosen, i)) continue;
      AgentSet with = chosen;
      with.insert(std::upper_bound(with.begin(), with.end(), i), i);
      const double capped_gain = std::min(value(f, with), cap) - chosen_value;
      const double gain = distortion * capped_gain - prices[i];
      if (gain > best_gain + kTieMargin) {
        best_gain = gain;
        best = i;
      }
    }
    if (best >= 0) {
      chosen.insert(std::upper_bound(chosen.begin(), chosen.end(), best), best);
      chosen_value = std::min(value(f, chosen), cap);
    }
  }
  return chosen;
}

}  // namespace mpc
