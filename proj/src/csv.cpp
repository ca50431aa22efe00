#include "sqz/csv.hpp"

#include <cstdio>
#include <sstream>

namespace sqz {

std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::size_t CsvTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw MissingColumnError(name);
}

double CsvTable::number_at(std::size_t row, std::size_t col) const {
  const std::string& cell = rows.at(row).at(col);
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw ParseError("cannot parse number '" + cell + "'",
                     static_cast<long>(row) + 2);
  }
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (table.columns.empty()) {
      table.columns = split_line(line);
      if (table.columns.empty()) throw ParseError("empty header", line_no);
      continue;
    }
    auto cells = split_line(line);
    if (cells.size() != table.columns.size()) {
      throw ParseError("expected " + std::to_string(table.columns.size()) +
                           " cells, got " + std::to_string(cells.size()),
                       line_no);
    }
    table.rows.push_back(std::move(cells));
  }
  if (table.columns.empty()) throw ParseError("no header line", line_no);
  return table;
}

}  // namespace sqz
