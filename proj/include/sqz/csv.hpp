#pragma once

#include <string>
#include <vector>

#include "sqz/errors.hpp"

namespace sqz {

// Fixed numeric formatting used by every CSV and report emitter: 9
// significant digits, shortest form ("%.9g"). Keeps outputs byte-stable.
std::string format_g9(double v);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  // Index of a column; throws MissingColumnError.
  std::size_t column_index(const std::string& name) const;
  // Parsed numeric cell; throws ParseError with the data row number.
  double number_at(std::size_t row, std::size_t col) const;
};

// Parse comma-separated text with a header line. Lines starting with '#'
// and blank lines are skipped. Throws ParseError (with line number) on
// structural problems.
CsvTable parse_csv(const std::string& text);

}  // namespace sqz
