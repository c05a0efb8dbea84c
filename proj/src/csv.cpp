#include "betascore/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <system_error>

namespace betascore {

namespace {

// splits one physical CSV record; handles quoted fields with doubled quotes
std::vector<std::string> split_record(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw DataError("csv: unterminated quote on line " + std::to_string(line_no));
  fields.push_back(std::move(field));
  return fields;
}

}  // namespace

CsvTable CsvTable::read(std::istream& in) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw DataError("csv: empty input, header row required");
  ++line_no;
  table.header_ = split_record(line, line_no);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = split_record(line, line_no);
    if (fields.size() != table.header_.size()) {
      throw DataError("csv: line " + std::to_string(line_no) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(table.header_.size()));
    }
    table.cells_.push_back(std::move(fields));
  }
  return table;
}

CsvTable CsvTable::read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("csv: cannot open " + path);
  return read(in);
}

std::size_t CsvTable::column_index(const std::string& name) const {
  const auto it = std::find(header_.begin(), header_.end(), name);
  if (it == header_.end()) throw MissingColumnError(name);
  return static_cast<std::size_t>(it - header_.begin());
}

Vector CsvTable::numeric_column(const std::string& name) const {
  const std::size_t col = column_index(name);
  Vector out(static_cast<Eigen::Index>(cells_.size()));
  for (std::size_t row = 0; row < cells_.size(); ++row) {
    const std::string& text = cells_[row][col];
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc() || result.ptr != end || text.empty()) {
      throw NonNumericCellError(row + 1, name, text);
    }
    out[static_cast<Eigen::Index>(row)] = value;
  }
  return out;
}

void CsvTable::drop_rows(std::vector<std::size_t> one_based_rows) {
  std::sort(one_based_rows.begin(), one_based_rows.end());
  one_based_rows.erase(std::unique(one_based_rows.begin(), one_based_rows.end()),
                       one_based_rows.end());
  for (const std::size_t row : one_based_rows) {
    if (row < 1 || row > cells_.size()) {
      throw DataError("drop_rows: row " + std::to_string(row) + " outside 1.." +
                      std::to_string(cells_.size()));
    }
  }
  std::vector<std::vector<std::string>> kept;
  kept.reserve(cells_.size() - one_based_rows.size());
  std::size_t next = 0;
  for (std::size_t row = 0; row < cells_.size(); ++row) {
    if (next < one_based_rows.size() && one_based_rows[next] == row + 1) {
      ++next;
      continue;
    }
    kept.push_back(std::move(cells_[row]));
  }
  cells_ = std::move(kept);
}

std::string format_double(double value) {
  char buf[40];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

std::string format_scientific(double value, int significant_digits) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*e", significant_digits - 1, value);
  return buf;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n") != std::string::npos) {
      out << '"';
      for (const char c : f) {
        if (c == '"') out << '"';
        out << c;
      }
      out << '"';
    } else {
      out << f;
    }
  }
  out << '\n';
}

}  // namespace betascore
