#include "achull/report.hpp"

namespace achull::io {

RunReport make_report(const std::string& input_path, const LoadedPoints& loaded, const BuildConfig<double>& config,
                      const BuildResult<double>& result) {
  RunReport r;
  r.input_path = input_path;
  r.rows_read = loaded.rows_read;
  r.points = loaded.points.size();
  r.dimension = loaded.points.dim();
  r.duplicates_removed = loaded.duplicates_removed;
  r.row_to_index = loaded.row_to_index;
  r.config = config;
  r.tol_interior = result.tol_interior;
  r.tol_opt = result.tol_opt;
  r.vertices = result.vertices.indices;
  r.vertex_coordinates.resize(static_cast<Index>(r.vertices.size()), loaded.points.dim());
  for (std::size_t k = 0; k < r.vertices.size(); ++k) {
    r.vertex_coordinates.row(static_cast<Index>(k)) = loaded.points.row(r.vertices[k]);
  }
  r.epsilon_achieved = result.vertices.epsilon_achieved;
  r.trace = result.trace;
  return r;
}

nlohmann::ordered_json to_json(const RunReport& r) {
  using json = nlohmann::ordered_json;

  json vertices = json::array();
  for (std::size_t k = 0; k < r.vertices.size(); ++k) {
    const auto row = r.vertex_coordinates.row(static_cast<Index>(k));
    vertices.push_back({{"index", r.vertices[k]},
                        {"coordinates", std::vector<double>(row.data(), row.data() + row.size())}});
  }

  json iterations = json::array();
  for (const auto& it : r.trace.iterations) {
    iterations.push_back({{"k", it.k},
                          {"chosen", it.chosen},
                          {"eps_hat", it.eps_hat},
                          {"interior_added", it.interior_added},
                          {"interior_total", it.interior_total},
                          {"evals_used", it.evals_used},
                          {"pruned", it.pruned}});
  }

  const auto& c = r.config;
  json out;
  out["schema_version"] = kSchemaVersion;
  out["input"] = {{"path", r.input_path},
                  {"rows", r.rows_read},
                  {"points", r.points},
                  {"dimension", r.dimension},
                  {"duplicates_removed", r.duplicates_removed},
                  {"row_to_index", r.row_to_index}};
  out["config"] = {{"max_vertices", c.max_vertices},
                   {"epsilon_des", c.epsilon_des},
                   {"tol_interior", r.tol_interior},
                   {"tol_interior_mode", c.tol_interior ? "fixed" : "auto"},
                   {"tol_opt", r.tol_opt},
                   {"max_solver_iterations", c.solver.max_iterations},
                   {"epsilon0", c.solver.epsilon0},
                   {"tie", c.tie.mode == TieMode::deterministic ? "deterministic" : "random"},
                   {"seed", c.tie.seed},
                   {"threads", c.threads}};
  out["result"] = {{"epsilon_achieved", r.epsilon_achieved},
                   {"vertex_count", r.vertices.size()},
                   {"iterations", r.trace.iteration_count()},
                   {"solver_calls", r.trace.solver_calls},
                   {"vertices", std::move(vertices)}};
  out["trace"] = std::move(iterations);
  out["timing"] = {{"solver_s", r.trace.solver_seconds},
                   {"search_s", r.trace.search_seconds},
                   {"prune_s", r.trace.prune_seconds},
                   {"total_s", r.trace.total_seconds}};
  return out;
}

}  // namespace achull::io
