#include "nabundle/csv.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace nabundle {

namespace {

void append_number(std::string& line, double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  line += buf;
}

}  // namespace

void emit_csv(const TrialTable& table, std::ostream& os) {
  os << "# seed: " << table.seed << "\n";
  os << "# config: " << table.config_echo << "\n";
  std::string line = "# wall_seconds: ";
  append_number(line, table.wall_seconds);
  os << line << "\n";

  line.clear();
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i > 0) line += ',';
    line += table.columns[i];
  }
  os << line << "\n";

  for (const auto& row : table.rows) {
    line.clear();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) line += ',';
      append_number(line, row[i]);
    }
    os << line << "\n";
  }
  os.flush();
  if (!os) throw std::runtime_error("CSV write failed");
}

void emit_csv(const TrialTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  emit_csv(table, out);
  out.close();
  if (!out) throw std::runtime_error("CSV write failed: " + path);
}

}  // namespace nabundle
