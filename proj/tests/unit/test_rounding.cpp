#include "doctest.h"
#include "mpc/errors.hpp"
#include "mpc/lp_engine.hpp"
#include "mpc/rounding.hpp"
#include "support/test_support.hpp"

using namespace mpc;

namespace {

Instance two_project_additive(Eigen::VectorXd v1, Eigen::VectorXd v2) {
  Instance instance;
  instance.n_agents = static_cast<int>(v1.size());
  instance.n_projects = 2;
  instance.costs = Eigen::MatrixXd::Zero(instance.n_agents, 2);
  instance.functions.push_back(SuccessFunction::additive(std::move(v1)));
  instance.functions.push_back(SuccessFunction::additive(std::move(v2)));
  return instance;
}

std::vector<int> all_projects(const Instance& instance) {
  std::vector<int> out;
  for (int j = 0; j < instance.n_projects; ++j) out.push_back(j);
  return out;
}

AgentSet all_agents(const Instance& instance) {
  AgentSet out;
  for (int i = 0; i < instance.n_agents; ++i) out.push_back(i);
  return out;
}

}  // namespace

TEST_CASE("to_distributions aggregates column weights over estimates") {
  Eigen::VectorXd v(1);
  v << 0.5;
  Instance instance;
  instance.n_agents = 1;
  instance.n_projects = 1;
  instance.costs = Eigen::MatrixXd::Zero(1, 1);
  instance.functions.push_back(SuccessFunction::additive(v));

  FractionalSolution sol;
  sol.columns.push_back(Column{0, 0.2, {0}, 0.3});
  sol.columns.push_back(Column{0, 0.4, {0}, 0.2});
  auto dist = to_distributions(sol, instance);
  REQUIRE(dist.projects[0].size() == 1);
  CHECK(dist.projects[0][0].agents == AgentSet{0});
  CHECK(dist.projects[0][0].probability == doctest::Approx(0.5));
  CHECK(dist.projects[0][0].witness_estimate == doctest::Approx(0.2));  // smallest contributor
}

TEST_CASE("to_distributions: the empty solution has empty supports") {
  Eigen::VectorXd v(1);
  v << 0.5;
  Instance instance;
  instance.n_agents = 1;
  instance.n_projects = 2;
  instance.costs = Eigen::MatrixXd::Zero(1, 2);
  instance.functions.push_back(SuccessFunction::additive(v));
  instance.functions.push_back(SuccessFunction::additive(v));
  auto dist = to_distributions(FractionalSolution{}, instance);
  CHECK(dist.projects[0].empty());
  CHECK(dist.projects[1].empty());
}

TEST_CASE("to_distributions rejects infeasible weights") {
  Eigen::VectorXd v(1);
  v << 0.5;
  Instance instance;
  instance.n_agents = 1;
  instance.n_projects = 1;
  instance.costs = Eigen::MatrixXd::Zero(1, 1);
  instance.functions.push_back(SuccessFunction::additive(v));
  FractionalSolution sol;
  sol.columns.push_back(Column{0, 0.2, {0}, 0.7});
  sol.columns.push_back(Column{0, 0.4, {0}, 0.6});
  CHECK_THROWS_AS(to_distributions(sol, instance), ValidationError);
}

TEST_CASE("support_value evaluates the weighted intersection formula") {
  Eigen::VectorXd v1(2), v2(2);
  v1 << 0.3, 0.2;
  v2 << 0.1, 0.4;
  Instance instance = two_project_additive(v1, v2);

  SupportDistribution dist;
  dist.projects.resize(2);
  dist.projects[0].push_back(SupportEntry{{0, 1}, 0.5, 0.5, {0, 1}});
  dist.projects[1].push_back(SupportEntry{{1}, 1.0, 0.5, {1}});

  CHECK(support_value(dist, instance, {}, all_agents(instance)) == 0.0);
  // 0.5 * f1({0,1}) + 1.0 * f2({1}) = 0.5*0.5 + 0.4
  CHECK(support_value(dist, instance, all_projects(instance), all_agents(instance)) ==
        doctest::Approx(0.65));
  // Restricting to agent 0 drops f2's contribution.
  CHECK(support_value(dist, instance, all_projects(instance), AgentSet{0}) ==
        doctest::Approx(0.15));
}

TEST_CASE("rounding keeps point-mass disjoint supports intact") {
  Eigen::VectorXd v1(3), v2(3);
  v1 << 0.4, 0.0, 0.0;
  v2 << 0.0, 0.2, 0.3;
  Instance instance = two_project_additive(v1, v2);

  SupportDistribution dist;
  dist.projects.resize(2);
  dist.projects[0].push_back(SupportEntry{{0}, 1.0, 1.0, {0}});
  dist.projects[1].push_back(SupportEntry{{1, 2}, 1.0, 1.0, {1, 2}});
  auto rounded = round_distribution(dist, instance);
  CHECK(rounded.allocation.assignment == std::vector<int>{0, 1, 1});
  const double val =
      support_value(dist, instance, all_projects(instance), all_agents(instance));
  double total = 0.0;
  for (int j = 0; j < 2; ++j)
    total += value(instance.functions[j], rounded.allocation.project_set(j));
  CHECK(total == doctest::Approx(val));
}

TEST_CASE("rounding resolves contested agents and keeps half the value") {
  // Two identical projects both wanting agent 0.
  Eigen::VectorXd v(2);
  v << 0.4, 0.0;
  Instance instance = two_project_additive(v, v);
  SupportDistribution dist;
  dist.projects.resize(2);
  dist.projects[0].push_back(SupportEntry{{0}, 1.0, 1.0, {0}});
  dist.projects[1].push_back(SupportEntry{{0}, 1.0, 1.0, {0}});
  auto rounded = round_distribution(dist, instance);
  CHECK(rounded.allocation.assignment == std::vector<int>{0, kUnassigned});
  const double val =
      support_value(dist, instance, all_projects(instance), all_agents(instance));
  CHECK(val == doctest::Approx(0.8));
  double total = 0.0;
  for (int j = 0; j < 2; ++j)
    total += value(instance.functions[j], rounded.allocation.project_set(j));
  CHECK(total >= val / 2 - 1e-9);
}

TEST_CASE("property: rounding LP outputs is disjoint, supported, and above half value") {
  testing::Rng rng(31415);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = rng.uniform_int(2, 8);
    const int m = rng.uniform_int(1, 3);
    Instance instance =
        testing::random_instance(rng, n, m, testing::random_demand_tag(rng), trial % 2 ? 0.2 : 0.0);
    Params params;
    params.delta = 0.25;
    auto sol = solve_fractional_allocation(instance, params);
    auto dist = to_distributions(sol, instance);
    auto rounded = round_distribution(dist, instance);

    // Distribution invariants from feasibility.
    for (int j = 0; j < m; ++j) {
      double mass = 0.0;
      for (const auto& e : dist.projects[j]) {
        CHECK(e.probability > 0.0);
        mass += e.probability;
      }
      CHECK(mass <= 1.0 + 1e-9);
    }

    // Each rounded team sits inside a support set of its project.
    for (int j = 0; j < m; ++j) {
      const AgentSet team = rounded.allocation.project_set(j);
      if (team.empty()) continue;
      bool inside = false;
      for (const auto& e : dist.projects[j]) inside |= set_is_subset(team, e.agents);
      CHECK(inside);
      REQUIRE(rounded.witnesses[j].has_value());
      CHECK(set_is_subset(team, rounded.witnesses[j]->support_agents));
    }

    const double val =
        support_value(dist, instance, all_projects(instance), all_agents(instance));
    double total = 0.0;
    for (int j = 0; j < m; ++j)
      total += value(instance.functions[j], rounded.allocation.project_set(j));
    CHECK(total >= val / 2 - 1e-9);
  }
}

TEST_CASE("rounding raises loudly when the distribution preconditions are broken") {
  // Three projects all demanding the same agent with certainty: the agent's
  // selection probability is 3, and no support set can pass the test.
  Eigen::VectorXd v(1);
  v << 0.4;
  Instance instance;
  instance.n_agents = 1;
  instance.n_projects = 3;
  instance.costs = Eigen::MatrixXd::Zero(1, 3);
  for (int j = 0; j < 3; ++j) instance.functions.push_back(SuccessFunction::additive(v));
  SupportDistribution dist;
  dist.projects.resize(3);
  for (int j = 0; j < 3; ++j) dist.projects[j].push_back(SupportEntry{{0}, 1.0, 0.8, {0}});
  CHECK_THROWS_AS(round_distribution(dist, instance), SolverError);
}

TEST_CASE("rounding is deterministic") {
  testing::Rng rng(999);
  Instance instance = testing::random_instance(rng, 5, 2, SuccessFunction::Tag::Xos, 0.1);
  Params params;
  params.delta = 0.2;
  auto sol = solve_fractional_allocation(instance, params);
  auto dist = to_distributions(sol, instance);
  auto first = round_distribution(dist, instance);
  auto second = round_distribution(dist, instance);
  CHECK(first.allocation == second.allocation);
}
