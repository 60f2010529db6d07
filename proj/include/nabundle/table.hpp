#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nabundle {

/// CSV-ready experiment result: a header, numeric rows of matching arity, and
/// the metadata echoed into `#` comment lines.
struct TrialTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::uint64_t seed = 0;
  std::string config_echo;  // canonical JSON of the generating config
  double wall_seconds = 0.0;
};

}  // namespace nabundle
