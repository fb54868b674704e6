#include "qisim/serialize.hpp"

#include <cstdio>
#include <stdexcept>

namespace qisim::ser {

std::string format_sig(double value) {
  if (value == 0.0) return "0";  // folds -0 as well
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void CsvTable::add_meta(const std::string& key, const std::string& value) {
  metadata.emplace_back(key, value);
}

void CsvTable::add_meta(const std::string& key, double value) {
  metadata.emplace_back(key, format_sig(value));
}

std::string CsvTable::to_string() const {
  std::string out;
  for (const auto& [key, value] : metadata)
    out += "# " + key + " = " + value + "\n";
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    if (row.size() != columns.size())
      throw std::logic_error("CsvTable: row width does not match header");
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_sig(row[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace qisim::ser
