#include <limits>

#include "doctest.h"
#include "mpc/errors.hpp"
#include "mpc/oracles.hpp"
#include "support/test_support.hpp"

using namespace mpc;

namespace {
const double kInf = std::numeric_limits<double>::infinity();

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}
}  // namespace

TEST_CASE("value: additive sums, xos takes the best clause, coverage unions") {
  CHECK(value(SuccessFunction::additive(vec2(0.4, 0.3)), AgentSet{0, 1}) == doctest::Approx(0.7));

  Eigen::MatrixXd clauses(2, 2);
  clauses << 0.5, 0.0, 0.2, 0.3;
  CHECK(value(SuccessFunction::xos(clauses), AgentSet{0, 1}) == doctest::Approx(0.5));

  Eigen::VectorXd weights(2);
  weights << 0.3, 0.4;
  auto cover = SuccessFunction::coverage(weights, {{0}, {0, 1}});
  CHECK(value(cover, AgentSet{0, 1}) == doctest::Approx(0.7));
  CHECK(value(cover, AgentSet{}) == 0.0);
}

TEST_CASE("marginal: additive, budget-additive at the cap, zero contribution") {
  CHECK(marginal(SuccessFunction::additive(vec2(0.4, 0.3)), 0, AgentSet{1}) ==
        doctest::Approx(0.4));
  CHECK(marginal(SuccessFunction::budget_additive(vec2(0.6, 0.6), 1.0), 1, AgentSet{0}) ==
        doctest::Approx(0.4));
  CHECK(marginal(SuccessFunction::additive(vec2(0.0, 0.5)), 0, AgentSet{}) == 0.0);
  CHECK_THROWS_AS(marginal(SuccessFunction::additive(vec2(0.4, 0.3)), 1, AgentSet{1}),
                  PreconditionError);
}

TEST_CASE("demand: additive keeps strictly profitable agents") {
  PriceVector p = vec2(0.1, 0.5);
  auto f = SuccessFunction::additive(vec2(0.4, 0.3));
  CHECK(demand(f, p) == AgentSet{0});
  CHECK(demand_utility(f, p, AgentSet{0}) == doctest::Approx(0.3));
  // Ties at zero are excluded.
  CHECK(demand(f, vec2(0.4, 0.3)).empty());
}

TEST_CASE("demand: xos picks the best clause") {
  Eigen::MatrixXd clauses(2, 2);
  clauses << 0.5, 0.0, 0.0, 0.5;
  auto f = SuccessFunction::xos(clauses);
  PriceVector p = vec2(0.2, 0.1);
  CHECK(demand(f, p) == AgentSet{1});
  CHECK(demand_utility(f, p, demand(f, p)) == doctest::Approx(0.4));
}

TEST_CASE("demand: all prices infinite yields the empty set") {
  auto f = SuccessFunction::additive(vec2(0.4, 0.3));
  CHECK(demand(f, vec2(kInf, kInf)).empty());
}

TEST_CASE("demand rejects unsupported tags and bad prices") {
  auto ba = SuccessFunction::budget_additive(vec2(0.6, 0.6), 1.0);
  CHECK_THROWS_AS(demand(ba, vec2(0.0, 0.0)), PreconditionError);
  auto f = SuccessFunction::additive(vec2(0.4, 0.3));
  CHECK_THROWS_AS(demand(f, vec2(-0.1, 0.0)), PreconditionError);
  CHECK_THROWS_AS(demand(f, vec2(std::nan(""), 0.0)), PreconditionError);
}

TEST_CASE("property: demand utility matches the exhaustive maximum") {
  testing::Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.uniform_int(1, 10);
    auto f = testing::random_function(rng, n, testing::random_demand_tag(rng));
    PriceVector p(n);
    for (int i = 0; i < n; ++i) {
      if (rng.chance(0.1))
        p[i] = kInf;
      else
        p[i] = rng.chance(0.2) ? 0.0 : rng.uniform(0.0, 0.4);
    }
    const AgentSet chosen = demand(f, p);
    for (int i : chosen) CHECK(!std::isinf(p[i]));
    CHECK(demand_utility(f, p, chosen) ==
          doctest::Approx(testing::brute_force_demand_utility(f, p)).epsilon(1e-9));
  }
}

TEST_CASE("property: marginals are submodular for additive, budget-additive, coverage") {
  testing::Rng rng(99);
  const SuccessFunction::Tag tags[] = {SuccessFunction::Tag::Additive,
                                       SuccessFunction::Tag::BudgetAdditive,
                                       SuccessFunction::Tag::Coverage};
  for (int trial = 0; trial < 150; ++trial) {
    const int n = rng.uniform_int(2, 9);
    auto f = testing::random_function(rng, n, tags[trial % 3]);
    AgentSet small, big;
    for (int i = 0; i < n; ++i) {
      const double roll = rng.unit();
      if (roll < 0.3) {
        small.push_back(i);
        big.push_back(i);
      } else if (roll < 0.6) {
        big.push_back(i);
      }
    }
    int agent = rng.uniform_int(0, n - 1);
    if (set_contains(big, agent)) continue;
    CHECK(marginal(f, agent, small) >= marginal(f, agent, big) - 1e-12);
  }
}

TEST_CASE("property: value is monotone") {
  testing::Rng rng(7);
  const SuccessFunction::Tag tags[] = {
      SuccessFunction::Tag::Additive, SuccessFunction::Tag::BudgetAdditive,
      SuccessFunction::Tag::Coverage, SuccessFunction::Tag::Xos};
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.uniform_int(1, 10);
    auto f = testing::random_function(rng, n, tags[trial % 4]);
    AgentSet small, big;
    for (int i = 0; i < n; ++i) {
      const double roll = rng.unit();
      if (roll < 0.35) {
        small.push_back(i);
        big.push_back(i);
      } else if (roll < 0.7) {
        big.push_back(i);
      }
    }
    CHECK(value(f, small) <= value(f, big) + 1e-12);
  }
}
