#include "restartar/csv.hpp"

#include <charconv>
#include <cmath>

#include "restartar/error.hpp"

namespace restartar {

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<CsvCell> row) {
  if (row.size() != header_.size())
    fail(ErrorKind::InvalidArgument, "csv row has " + std::to_string(row.size()) + " cells, header has " +
                                         std::to_string(header_.size()));
  rows_.push_back(std::move(row));
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&out](const auto& cells, auto&& render) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += render(cells[i]);
    }
    out += '\n';
  };
  line(header_, [](const std::string& h) { return csv_escape(h); });
  for (const auto& row : rows_)
    line(row, [](const CsvCell& c) {
      if (const auto* s = std::get_if<std::string>(&c)) return csv_escape(*s);
      if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
      return format_number(std::get<double>(c));
    });
  return out;
}

}  // namespace restartar
