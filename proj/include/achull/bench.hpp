#pragma once

#include "achull/point_set.hpp"

#include "json.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace achull::io {

struct BenchmarkSpec {
  std::vector<Index> sizes;       // N values
  std::vector<Index> dimensions;  // n values
  Index max_vertices = 8;
  std::uint64_t seed = 0;
  Index repetitions = 1;
  double epsilon_des = 0;
  bool include_timing = true;
};

// {"N": [...], "n": [...], "V": 8, "seed": 1, "repetitions": 3,
//  "epsilon": 0, "timing": true}; epsilon and timing are optional.
BenchmarkSpec parse_benchmark_spec(const nlohmann::json& j);

struct BenchmarkRow {
  Index size = 0;
  Index dimension = 0;
  Index max_vertices = 0;
  Index repetitions_ok = 0;
  double iterations_mean = 0;
  double vertices_mean = 0;
  double distance_calls_mean = 0;
  double epsilon_mean = 0;
  double wall_seconds_mean = 0;
  std::string status = "ok";  // first error message of the cell otherwise
};

// Standard-normal cloud; identical for identical (seed, N, n, repetition).
RowMatrix<double> gaussian_cloud(Index size, Index dimension, std::uint64_t seed, Index repetition);

std::vector<BenchmarkRow> run_benchmark(const BenchmarkSpec& spec);

void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkRow>& rows, bool include_timing);

}  // namespace achull::io
