#pragma once

#include <vector>

#include "mpc/oracles.hpp"
#include "mpc/success_function.hpp"

namespace mpc {

/// A demand query against the capped function min{f(S), cap}. Every agent
/// with a finite price must satisfy f({i}) <= delta * cap.
struct CappedQuery {
  SuccessFunction f;
  double cap = 0.0;
  double delta = 0.5;
  PriceVector prices;
};

/// Intermediate state exposed for testing: the bracketing sets of the binary
/// search and the greedy block partition of the over-cap demand set.
struct CappedDemandTrace {
  AgentSet result;
  bool early_exit = false;  // the plain demand already fit under the cap
  AgentSet s_low;           // value <= cap
  AgentSet s_high;          // value > cap
  double gamma_low = 0.0;
  double gamma_high = 1.0;
  std::vector<AgentSet> blocks;
};

/// Approximate capped demand via demand queries (additive/XOS only).
///
/// Returns a set whose capped utility min{f(S),cap} − p(S) is at least
/// 1/(1 + 1/(1−delta)) of the best capped utility, minus delta*cap.
/// Procedure: query the plain demand; if its value exceeds the cap, binary
/// search a price-scaling factor gamma in [0,1] until the bracket is narrower
/// than delta, greedily split the over-cap set into blocks of value at least
/// (1−delta)*cap, and return the best of the under-cap set and the best block.
AgentSet capped_demand(const CappedQuery& query);
CappedDemandTrace capped_demand_trace(const CappedQuery& query);

/// Approximate capped demand for monotone submodular representations
/// (additive, budget-additive, coverage) using value queries only: distorted
/// greedy on g(S) = min{f(S), cap} minus the linear price. The output S
/// satisfies min{f(S),cap} − p(S) >= (1−1/e) min{f(T),cap} − p(T) for all T.
AgentSet capped_demand_submodular(const SuccessFunction& f, double cap,
                                  const PriceVector& prices);

/// min{f(S), cap} − p(S); −infinity if S holds an infinitely priced agent.
double capped_utility(const SuccessFunction& f, double cap, const PriceVector& prices,
                      const AgentSet& s);

}  // namespace mpc
