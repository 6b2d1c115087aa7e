#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mpc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input file or unsupported schema version.
struct ParseError : Error {
  using Error::Error;
};

/// Instance data violates a declared invariant.
struct ValidationError : Error {
  explicit ValidationError(std::vector<std::string> violations_in)
      : Error(join(violations_in)), violations(std::move(violations_in)) {}
  std::vector<std::string> violations;

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "instance validation failed:";
    for (const auto& s : v) out += "\n  - " + s;
    return out;
  }
};

/// A caller broke an operation's contract.
struct PreconditionError : Error {
  using Error::Error;
};

/// Enumeration would exceed the configured size guard.
struct SizeGuardError : Error {
  using Error::Error;
};

/// Numerical solver failure (simplex breakdown, column budget, rounding drift).
struct SolverError : Error {
  using Error::Error;
};

/// An allocated agent has zero marginal contribution, so no finite payment
/// can incentivize them.
struct ZeroMarginalError : Error {
  ZeroMarginalError(int agent_in, int project_in)
      : Error("agent " + std::to_string(agent_in) + " has zero marginal on project " +
              std::to_string(project_in) + "; contract payment undefined"),
        agent(agent_in),
        project(project_in) {}
  int agent;
  int project;
};

}  // namespace mpc
