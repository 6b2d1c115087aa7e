#pragma once

#include <cstdint>
#include <string>

#include "mpc/instance.hpp"

namespace mpc {

enum class FunctionClass { Additive, BudgetAdditive, Coverage, Xos };
enum class CostRegime { Zero, Low, Random };

FunctionClass function_class_from_name(const std::string& name);
CostRegime cost_regime_from_name(const std::string& name);
std::string to_string(FunctionClass c);
std::string to_string(CostRegime r);

/// Seeded description of a random instance. The seed fully determines the
/// output, independent of platform.
struct GenSpec {
  int n_agents = 4;
  int n_projects = 2;
  FunctionClass function_class = FunctionClass::Additive;
  CostRegime cost_regime = CostRegime::Random;
  std::uint64_t seed = 0;
};

/// Draws a valid instance. Singleton values are skewed (a boosted agent per
/// project) so that both pipeline branches stay non-trivial. Cost regimes:
/// zero; low = uniform over [0, 0.1 * mean singleton]; random = uniform over
/// [0, max singleton], per project.
Instance generate_instance(const GenSpec& spec);

}  // namespace mpc
