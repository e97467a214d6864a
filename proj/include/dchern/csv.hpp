#pragma once

#include <fstream>
#include <string>
#include <variant>
#include <vector>

namespace dchern {

// 17 significant digits, scientific notation; "nan" for NaN.
std::string format_double(double v);

// Writes "# <comment>" then the header row, then rows. Cells are either
// numbers (formatted with format_double), integers, or strings.
class CsvWriter {
 public:
  using Cell = std::variant<double, long, std::string>;

  CsvWriter(const std::string& path, const std::string& comment, const std::vector<std::string>& columns);
  void row(const std::vector<Cell>& cells);

 private:
  std::ofstream out_;
  std::size_t columns_;
};

}  // namespace dchern
