#pragma once

#include <Eigen/Dense>

#include "mpc/success_function.hpp"
#include "mpc/types.hpp"

namespace mpc {

/// Per-agent prices. Entries are non-negative reals or +infinity, where an
/// infinite price means the agent is never demanded. NaN is rejected.
using PriceVector = Eigen::VectorXd;

void check_prices(const PriceVector& prices);

/// Exact demand: a set maximizing f(S) − Σ_{i∈S} p_i.
///
/// Only Additive and XOS carry exact demand. Additive takes every agent with
/// v_i − p_i > 0 (ties at zero excluded); XOS computes that per clause and
/// keeps the best clause, lowest clause index on ties. Coverage and
/// budget-additive functions must go through the capped-demand greedy
/// instead.
AgentSet demand(const SuccessFunction& f, const PriceVector& prices);

/// f(S) − Σ_{i∈S} p_i; −infinity when S holds an infinitely priced agent.
double demand_utility(const SuccessFunction& f, const PriceVector& prices, const AgentSet& s);

}  // namespace mpc
