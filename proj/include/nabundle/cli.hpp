#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "nabundle/experiment.hpp"

namespace nabundle::cli {

/// One-off algebra evaluation on literal bit-strings.
struct OpRequest {
  std::string name;         // bind | bundle | hamming | jaccard | global-distance
  std::string a;
  std::string b;
  double p = 0.5;           // bundle noise
  double ref_q = 0.5;       // global-distance reference activity
  std::uint64_t seed = 0;   // coin stream for stochastic bundling
};

struct Invocation {
  enum class Action { experiment, op };
  Action action = Action::experiment;
  ExperimentConfig config;  // valid when action == experiment
  std::string out_path;     // empty -> CSV on stdout
  OpRequest op;             // valid when action == op
};

/// Bad flags, bad config-file values, failed validation. Exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// --help anywhere; carries the text to print. Exit code 0.
struct HelpRequested {
  std::string text;
};

/// Parses argv (without the program name) into a validated invocation.
/// Precedence: flag > config file > NABUNDLE_JOBS (jobs only) > default.
Invocation parse_args(const std::vector<std::string>& args);

/// Full front end: parse, execute, serialize. Returns the process exit code
/// (0 success, 1 usage/validation, 2 runtime/I-O).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nabundle::cli
