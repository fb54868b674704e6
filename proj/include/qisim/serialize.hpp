#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qisim::ser {

// Fixed float formatting shared by every emitter: 12 significant digits,
// '.' decimal point, no locale. Identical inputs give identical bytes.
std::string format_sig(double value);

// CSV with `# key = value` metadata lines before the header row, LF endings.
struct CsvTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_meta(const std::string& key, const std::string& value);
  void add_meta(const std::string& key, double value);
  std::string to_string() const;
};

}  // namespace qisim::ser
