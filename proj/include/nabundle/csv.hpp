#pragma once

#include <iosfwd>
#include <string>

#include "nabundle/table.hpp"

namespace nabundle {

/// Serializes a table as CSV: `#` metadata comments (seed, config echo,
/// wall time), then the header row, then one line per row with 12
/// significant digits. Re-running with the same seed yields byte-identical
/// output except for the wall-time comment.
void emit_csv(const TrialTable& table, std::ostream& os);

/// Writes to `path`, throwing std::runtime_error on any I/O failure.
void emit_csv(const TrialTable& table, const std::string& path);

}  // namespace nabundle
