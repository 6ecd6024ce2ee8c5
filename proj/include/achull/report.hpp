#pragma once

#include "achull/hull.hpp"
#include "achull/io.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace achull::io {

inline constexpr int kSchemaVersion = 1;

struct RunReport {
  std::string input_path;
  Index rows_read = 0;
  Index points = 0;
  Index dimension = 0;
  Index duplicates_removed = 0;
  std::vector<Index> row_to_index;

  BuildConfig<double> config;
  double tol_interior = 0;  // resolved value
  double tol_opt = 0;       // resolved value

  std::vector<Index> vertices;
  RowMatrix<double> vertex_coordinates;
  double epsilon_achieved = 0;
  BuildTrace<double> trace;
};

RunReport make_report(const std::string& input_path, const LoadedPoints& loaded, const BuildConfig<double>& config,
                      const BuildResult<double>& result);

// Key order is fixed. Everything that depends on wall-clock time lives under
// the top-level "timing" object.
nlohmann::ordered_json to_json(const RunReport& report);

}  // namespace achull::io
