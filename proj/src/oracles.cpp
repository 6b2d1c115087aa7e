#include "mpc/oracles.hpp"

#include <cmath>
#include <limits>

#include "mpc/errors.hpp"

namespace mpc {

void check_prices(const PriceVector& prices) {
  for (Eigen::Index i = 0; i < prices.size(); ++i) {
    if (std::isnan(prices[i])) throw PreconditionError("price vector contains NaN");
    if (prices[i] < 0.0) throw PreconditionError("price vector contains a negative entry");
  }
}

AgentSet demand(const SuccessFunction& f, const PriceVector& prices) {
  check_prices(prices);
  const int n = f.agent_count();
  if (prices.size() != n) throw PreconditionError("price vector has wrong length");

  switch (f.tag) {
    case SuccessFunction::Tag::Additive: {
      AgentSet out;
      for (int i = 0; i < n; ++i)
        if (f.values[i] - prices[i] > 0.0) out.push_back(i);
      return out;
    }
    case SuccessFunction::Tag::Xos: {
      // The double maximum over clauses and sets commutes, so the best
      // per-clause additive demand is an exact XOS demand.
      AgentSet best_set;
      double best_utility = 0.0;  // empty set
      for (Eigen::Index l = 0; l < f.clauses.rows(); ++l) {
        AgentSet s;
        double utility = 0.0;
        for (int i = 0; i < n; ++i) {
          const double gain = f.clauses(l, i) - prices[i];
          if (gain > 0.0) {
            s.push_back(i);
            utility += gain;
          }
        }
        if (utility > best_utility) {
          best_utility = utility;
          best_set = std::move(s);
        }
      }
      return best_set;
    }
    default:
      throw PreconditionError(
          "exact demand is only available for additive and XOS functions; "
          "use the capped-demand greedy for submodular representations");
  }
}

double demand_utility(const SuccessFunction& f, const PriceVector& prices, const AgentSet& s) {
  double paid = 0.0;
  for (int i : s) {
    if (std::isinf(prices[i])) return -std::numeric_limits<double>::infinity();
    paid += prices[i];
  }
  return value(f, s) - paid;
}

}  // namespace mpc
