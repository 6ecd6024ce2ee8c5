#include "achull/bench.hpp"

#include "achull/errors.hpp"
#include "achull/hull.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>
#include <random>

namespace achull::io {
namespace {

std::vector<Index> positive_list(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array() || j.at(key).empty()) {
    throw ContractViolation(std::string("benchmark spec needs a non-empty array \"") + key + "\"");
  }
  std::vector<Index> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number_integer() || v.get<long long>() < 1) {
      throw ContractViolation(std::string("benchmark spec \"") + key + "\" entries must be positive integers");
    }
    out.push_back(v.get<Index>());
  }
  return out;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

BenchmarkSpec parse_benchmark_spec(const nlohmann::json& j) {
  BenchmarkSpec spec;
  spec.sizes = positive_list(j, "N");
  spec.dimensions = positive_list(j, "n");
  spec.max_vertices = j.value("V", Index{8});
  spec.seed = j.value("seed", std::uint64_t{0});
  spec.repetitions = j.value("repetitions", Index{1});
  spec.epsilon_des = j.value("epsilon", 0.0);
  spec.include_timing = j.value("timing", true);
  if (spec.max_vertices < 1) throw ContractViolation("benchmark spec V must be >= 1");
  if (spec.repetitions < 1) throw ContractViolation("benchmark spec repetitions must be >= 1");
  return spec;
}

RowMatrix<double> gaussian_cloud(Index size, Index dimension, std::uint64_t seed, Index repetition) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(size), static_cast<std::uint32_t>(dimension),
                    static_cast<std::uint32_t>(repetition)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  RowMatrix<double> m(size, dimension);
  for (Index i = 0; i < size; ++i) {
    for (Index c = 0; c < dimension; ++c) m(i, c) = normal(rng);
  }
  return m;
}

std::vector<BenchmarkRow> run_benchmark(const BenchmarkSpec& spec) {
  std::vector<BenchmarkRow> rows;
  for (const Index n_points : spec.sizes) {
    for (const Index dim : spec.dimensions) {
      BenchmarkRow row;
      row.size = n_points;
      row.dimension = dim;
      row.max_vertices = spec.max_vertices;
      for (Index rep = 0; rep < spec.repetitions; ++rep) {
        try {
          const auto cloud = deduplicate(gaussian_cloud(n_points, dim, spec.seed, rep));
          BuildConfig<double> config;
          config.max_vertices = spec.max_vertices;
          config.epsilon_des = spec.epsilon_des;
          const auto t0 = std::chrono::steady_clock::now();
          const auto result = build(cloud.points, config);
          const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
          ++row.repetitions_ok;
          row.iterations_mean += static_cast<double>(result.trace.iteration_count());
          row.vertices_mean += static_cast<double>(result.vertices.indices.size());
          row.distance_calls_mean += static_cast<double>(result.trace.solver_calls);
          row.epsilon_mean += result.vertices.epsilon_achieved;
          row.wall_seconds_mean += wall;
        } catch (const std::exception& e) {
          if (row.status == "ok") row.status = std::string("error: ") + e.what();
        }
      }
      if (row.repetitions_ok > 0) {
        const auto k = static_cast<double>(row.repetitions_ok);
        row.iterations_mean /= k;
        row.vertices_mean /= k;
        row.distance_calls_mean /= k;
        row.epsilon_mean /= k;
        row.wall_seconds_mean /= k;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkRow>& rows, bool include_timing) {
  out << "N,n,V,reps_ok,iterations_mean,vertices_mean,distance_calls_mean,epsilon_mean";
  if (include_timing) out << ",wall_s_mean";
  out << ",status\n";
  for (const auto& r : rows) {
    out << r.size << ',' << r.dimension << ',' << r.max_vertices << ',' << r.repetitions_ok << ','
        << format_number(r.iterations_mean) << ',' << format_number(r.vertices_mean) << ','
        << format_number(r.distance_calls_mean) << ',' << format_number(r.epsilon_mean);
    if (include_timing) out << ',' << format_number(r.wall_seconds_mean);
    std::string status = r.status;
    for (char& ch : status) {
      if (ch == ',' || ch == '\n') ch = ' ';
    }
    out << ',' << status << '\n';
  }
}

}  // namespace achull::io
