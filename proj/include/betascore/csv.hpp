#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "betascore/numerics.hpp"

namespace betascore {

/// Comma-separated table with a mandatory header row. Fields may be quoted
/// with '"'; quotes inside quoted fields are doubled. Cells are kept as text
/// and converted on column extraction, so non-numeric columns are fine as
/// long as they are not requested.
class CsvTable {
 public:
  static CsvTable read(std::istream& in);
  static CsvTable read_file(const std::string& path);

  const std::vector<std::string>& header() const noexcept { return header_; }
  std::size_t rows() const noexcept { return cells_.size(); }

  /// Index of a named column; throws MissingColumnError.
  std::size_t column_index(const std::string& name) const;

  /// Numeric column by name; throws NonNumericCellError with the 1-based data
  /// row of the offending cell.
  Vector numeric_column(const std::string& name) const;

  const std::string& cell(std::size_t row, std::size_t col) const { return cells_[row][col]; }

  /// Removes the given 1-based data rows.
  void drop_rows(std::vector<std::size_t> one_based_rows);

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> cells_;
};

/// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double value);

/// Scientific notation with the given number of significant digits,
/// e.g. format_scientific(1.364e-6, 4) == "1.364e-06".
std::string format_scientific(double value, int significant_digits);

/// Writes one CSV record, quoting fields only when needed.
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace betascore
