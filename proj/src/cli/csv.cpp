#include "dchern/csv.hpp"

#include <cmath>
#include <cstdio>

#include "dchern/errors.hpp"

namespace dchern {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::string& comment, const std::vector<std::string>& columns)
    : out_(path, std::ios::binary), columns_(columns.size()) {
  if (!out_) throw ComputationError("cannot write '" + path + "'");
  out_ << "# " << comment << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != columns_) throw ComputationError("CsvWriter: row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>)
            out_ << format_double(v);
          else
            out_ << v;
        },
        cells[i]);
  }
  out_ << '\n';
}

}  // namespace dchern
