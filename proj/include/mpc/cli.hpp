#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "mpc/generator.hpp"

namespace mpc {

struct SolveOptions {
  bool exact = false;
  bool debug_lp = false;
  std::optional<double> delta;
  std::optional<double> epsilon;
};

struct BenchOptions {
  GenSpec spec;
  int count = 10;
  std::string out_csv;
};

/// Exit codes: 0 on success, 1 on a component error, 2 on a usage or parse
/// error. Diagnostics go to `err`.
int cmd_gen(const GenSpec& spec, const std::string& out_path, std::ostream& err);
int cmd_solve(const std::string& instance_path, const SolveOptions& options, std::ostream& out,
              std::ostream& err);
int cmd_verify(const std::string& instance_path, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err);

/// Full argument parser and dispatcher for the command-line tool.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mpc
