#pragma once

#include "achull/point_set.hpp"

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace achull::io {

struct LoadOptions {
  char delimiter = ',';
  bool has_header = false;
};

struct LoadedPoints {
  PointSet<double> points;
  // row_to_index[r] = retained index of data row r (header excluded, blank lines skipped).
  std::vector<Index> row_to_index;
  Index rows_read = 0;
  Index duplicates_removed = 0;
};

// Throws ParseError on ragged rows or non-numeric / non-finite cells, and
// ContractViolation when no data rows are present.
LoadedPoints parse_points(std::istream& in, const LoadOptions& options = {});
LoadedPoints load_points(const std::filesystem::path& path, const LoadOptions& options = {});

}  // namespace achull::io
