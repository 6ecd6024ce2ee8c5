#include "achull/io.hpp"

#include "achull/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <string_view>

namespace achull::io {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_cell(std::string_view cell, std::size_t row, std::size_t column) {
  cell = trim(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double value = 0;
  const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (cell.empty() || ec != std::errc() || end != cell.data() + cell.size()) {
    throw ParseError("row " + std::to_string(row) + ", column " + std::to_string(column) +
                         ": not a number: '" + std::string(cell) + "'",
                     row, column);
  }
  if (!std::isfinite(value)) {
    throw ParseError("row " + std::to_string(row) + ", column " + std::to_string(column) +
                         ": non-finite value",
                     row, column);
  }
  return value;
}

}  // namespace

LoadedPoints parse_points(std::istream& in, const LoadOptions& options) {
  std::vector<double> values;
  Index cols = -1;
  Index rows = 0;
  std::size_t line_no = 0;
  bool header_pending = options.has_header;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    Index count = 0;
    std::size_t pos = 0;
    for (;;) {
      const auto next = text.find(options.delimiter, pos);
      const auto cell = text.substr(pos, next == std::string_view::npos ? text.npos : next - pos);
      values.push_back(parse_cell(cell, line_no, static_cast<std::size_t>(count) + 1));
      ++count;
      if (next == std::string_view::npos) break;
      pos = next + 1;
    }
    if (cols < 0) {
      cols = count;
    } else if (count != cols) {
      throw ParseError("row " + std::to_string(line_no) + ": expected " + std::to_string(cols) +
                           " columns, found " + std::to_string(count),
                       line_no);
    }
    ++rows;
  }
  if (rows == 0) throw ContractViolation("input contains no data rows");

  const Eigen::Map<const RowMatrix<double>> raw(values.data(), rows, cols);
  auto dedup = deduplicate(raw);
  return {std::move(dedup.points), std::move(dedup.source_to_index), rows, dedup.duplicates_removed};
}

LoadedPoints load_points(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw ContractViolation("cannot open input file: " + path.string());
  return parse_points(in, options);
}

}  // namespace achull::io
