#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "berk/preimage.hpp"

namespace berk {

enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitVerification = 2, kExitUnsupported = 3 };

struct RunConfig {
  std::string command;              // analyze, preimages, tree, verify
  std::string map_path;             // map file, or corpus file for verify
  std::optional<long> prime;        // overrides the file's prime
  std::optional<long> precision;    // overrides the file's precision
  std::optional<long> n_max;        // levels; each command has its own default
  long budget = kDefaultBudget;
  std::vector<std::string> conjugates;
  std::string format = "json";      // json or csv
  std::string out_path;             // empty: standard output
  std::string target;               // preimages: JSON point or "center,log_radius"
};

/// Checks the RunConfig invariants; throws InvalidArgument.
void validate(const RunConfig& cfg);

int run_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_preimages(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_tree(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
/// Dispatch on cfg.command.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace berk
