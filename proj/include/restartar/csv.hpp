#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace restartar {

using CsvCell = std::variant<std::string, double, std::int64_t>;

/// RFC-4180 table with a header row and LF line endings.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<CsvCell> row);
  [[nodiscard]] std::size_t rows() const { return rows_.size(); }
  [[nodiscard]] std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<CsvCell>> rows_;
};

/// Shortest round-trip decimal form, '.' separator, locale independent.
std::string format_number(double x);

std::string csv_escape(const std::string& field);

}  // namespace restartar
