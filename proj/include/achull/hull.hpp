#pragma once

// Greedy approximate convex hull. Starting from an extreme point, each
// iteration adds the remaining point whose inclusion minimizes the worst-case
// distance of the remaining points to the hull, discards points that became
// interior, and drops earlier vertices that the new hull swallowed.

#include "achull/errors.hpp"
#include "achull/minmax.hpp"
#include "achull/point_set.hpp"
#include "achull/projection.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace achull {

template <typename Scalar = double>
struct VertexSet {
  std::vector<Index> indices;
  Scalar epsilon_achieved = 0;
};

template <typename Scalar = double>
struct BuildConfig {
  Index max_vertices = 1;
  Scalar epsilon_des = 0;
  // Distances at or below this count as zero. Unset: kRelativeTolerance x
  // bounding-box diagonal.
  std::optional<Scalar> tol_interior;
  SolverConfig<Scalar> solver;
  TieBreak tie;
  unsigned threads = 1;
};

template <typename Scalar = double>
struct IterationRecord {
  Index k = 0;
  Index chosen = 0;
  Scalar eps_hat = 0;
  Index interior_added = 0;
  Index interior_total = 0;
  Index evals_used = 0;
  std::vector<Index> pruned;
};

template <typename Scalar = double>
struct BuildTrace {
  std::vector<IterationRecord<Scalar>> iterations;
  Index solver_calls = 0;
  double solver_seconds = 0;
  double search_seconds = 0;
  double prune_seconds = 0;
  double total_seconds = 0;

  Index iteration_count() const { return static_cast<Index>(iterations.size()); }
};

template <typename Scalar>
void validate(const BuildConfig<Scalar>& config) {
  if (config.max_vertices < 1) throw ContractViolation("max_vertices must be >= 1");
  if (!(config.epsilon_des >= 0) || !std::isfinite(config.epsilon_des)) {
    throw ContractViolation("epsilon_des must be finite and >= 0");
  }
  if (config.tol_interior && !(*config.tol_interior > 0)) {
    throw ContractViolation("tol_interior must be positive");
  }
  validate(config.solver);
}

template <typename Scalar>
Scalar resolve_tol_interior(const BuildConfig<Scalar>& config, const PointSet<Scalar>& points) {
  return config.tol_interior ? *config.tol_interior : relative_tolerance(data_diameter(points));
}

/// Projection service shared by every stage of one build: counts solver
/// calls and the time spent inside the solver.
template <typename Scalar>
class HullDistance {
 public:
  HullDistance(const PointSet<Scalar>& points, const SolverConfig<Scalar>& solver)
      : projector_(points, solver) {}

  Scalar operator()(Index query, std::span<const Index> candidates) const {
    const auto start = std::chrono::steady_clock::now();
    const Scalar d = projector_(query, candidates).distance;
    const auto elapsed = std::chrono::steady_clock::now() - start;
    calls_.fetch_add(1, std::memory_order_relaxed);
    nanos_.fetch_add(std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed).count(),
                     std::memory_order_relaxed);
    return d;
  }

  Index calls() const { return calls_.load(); }
  double seconds() const { return static_cast<double>(nanos_.load()) * 1e-9; }

 private:
  IndexedProjector<Scalar> projector_;
  mutable std::atomic<Index> calls_{0};
  mutable std::atomic<long long> nanos_{0};
};

/// Lexicographic minimum of the rows: the smallest first coordinate, ties
/// broken by later coordinates. Always an extreme point.
template <typename Scalar>
VertexSet<Scalar> initialize(const PointSet<Scalar>& points) {
  if (points.size() < 1) throw ContractViolation("initialize requires a non-empty PointSet");
  Index best = 0;
  for (Index i = 1; i < points.size(); ++i) {
    if (detail::row_less(points.matrix(), i, best)) best = i;
  }
  return {{best}, std::numeric_limits<Scalar>::infinity()};
}

template <typename Scalar>
struct GreedyStep {
  Index chosen = 0;  // point index
  Scalar eps_hat = 0;
  // d(active[i], vertices + chosen) for every active position i.
  std::vector<Scalar> winning_column;
  Index evals_used = 0;
};

namespace detail {

template <typename Scalar>
class GreedyOracle {
 public:
  GreedyOracle(const HullDistance<Scalar>& distance, std::span<const Index> active,
               std::span<const Index> vertices)
      : distance_(distance), active_(active), vertices_(vertices.begin(), vertices.end()) {}

  Index rows() const { return static_cast<Index>(active_.size()); }
  Index cols() const { return static_cast<Index>(active_.size()); }

  Scalar operator()(Index i, Index j) const {
    // vertices + candidate, built per call so concurrent calls do not share buffers.
    std::vector<Index> hull(vertices_);
    hull.push_back(active_[j]);
    return distance_(active_[i], hull);
  }

 private:
  const HullDistance<Scalar>& distance_;
  std::span<const Index> active_;
  std::vector<Index> vertices_;
};

}  // namespace detail

/// One greedy step over the active points: argmin over candidates x of the
/// max over active z of d(z, conv(vertices + x)).
template <typename Scalar>
GreedyStep<Scalar> greedy_step(const HullDistance<Scalar>& distance, std::span<const Index> active,
                               const VertexSet<Scalar>& vertices, const BuildConfig<Scalar>& config) {
  if (active.empty()) throw ContractViolation("greedy_step requires a non-empty active set");
  const detail::GreedyOracle<Scalar> oracle(distance, active, vertices.indices);
  auto result = directed_min_max(oracle, SearchOptions{config.tie, config.threads});
  return {active[result.column], result.value, std::move(result.winning_column), result.evals_used};
}

template <typename Scalar>
GreedyStep<Scalar> greedy_step(const PointSet<Scalar>& points, std::span<const Index> active,
                               const VertexSet<Scalar>& vertices, const BuildConfig<Scalar>& config) {
  validate(config);
  const HullDistance<Scalar> distance(points, config.solver);
  return greedy_step(distance, active, vertices, config);
}

/// Active points whose entry in the winning column is within tol_interior
/// of zero, excluding the chosen point itself.
template <typename Scalar>
std::vector<Index> detect_interior(std::span<const Scalar> winning_column, std::span<const Index> active,
                                   Index chosen, Scalar tol_interior) {
  if (winning_column.size() != active.size()) {
    throw ContractViolation("winning column must cover every active point");
  }
  std::vector<Index> interior;
  for (std::size_t i = 0; i < active.size(); ++i) {
    if (active[i] != chosen && winning_column[i] <= tol_interior) interior.push_back(active[i]);
  }
  return interior;
}

/// Removes vertices lying within tol_interior of the hull of the others.
/// Scans in vertex order and restarts after each removal until a full pass
/// removes nothing. Returns the removed indices in removal order.
template <typename Scalar>
std::vector<Index> prune_vertices(const HullDistance<Scalar>& distance, VertexSet<Scalar>& vertices,
                                  Scalar tol_interior) {
  std::vector<Index> removed;
  auto& e = vertices.indices;
  bool changed = true;
  while (changed && e.size() > 1) {
    changed = false;
    for (std::size_t c = 0; c < e.size(); ++c) {
      std::vector<Index> others;
      others.reserve(e.size() - 1);
      for (std::size_t q = 0; q < e.size(); ++q) {
        if (q != c) others.push_back(e[q]);
      }
      if (distance(e[c], others) <= tol_interior) {
        removed.push_back(e[c]);
        e.erase(e.begin() + static_cast<std::ptrdiff_t>(c));
        changed = true;
        break;
      }
    }
  }
  return removed;
}

template <typename Scalar>
VertexSet<Scalar> prune_vertices(const PointSet<Scalar>& points, VertexSet<Scalar> vertices,
                                  const BuildConfig<Scalar>& config) {
  validate(config);
  if (vertices.indices.empty()) throw ContractViolation("prune_vertices requires at least one vertex");
  const HullDistance<Scalar> distance(points, config.solver);
  prune_vertices(distance, vertices, resolve_tol_interior(config, points));
  return vertices;
}

template <typename Scalar>
struct BuildResult {
  VertexSet<Scalar> vertices;
  BuildTrace<Scalar> trace;
  Scalar tol_interior = 0;
  Scalar tol_opt = 0;
};

/// Runs the greedy iteration until the vertex budget is used, the target
/// error is met, or every point is a vertex or interior.
template <typename Scalar>
BuildResult<Scalar> build(const PointSet<Scalar>& points, const BuildConfig<Scalar>& config) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  validate(config);

  BuildResult<Scalar> out;
  out.tol_interior = resolve_tol_interior(config, points);
  const HullDistance<Scalar> distance(points, config.solver);
  out.tol_opt = resolve_tol_opt(config.solver, data_diameter(points));

  auto& vertices = out.vertices;
  auto& trace = out.trace;
  vertices = initialize(points);

  std::vector<Index> active;
  active.reserve(static_cast<std::size_t>(points.size()));
  for (Index i = 0; i < points.size(); ++i) {
    if (i != vertices.indices.front()) active.push_back(i);
  }
  Index interior_total = 0;
  Scalar eps = std::numeric_limits<Scalar>::infinity();

  while (!active.empty() && static_cast<Index>(vertices.indices.size()) < config.max_vertices &&
         trace.iteration_count() < config.max_vertices && eps > config.epsilon_des) {
    const auto t_search = clock::now();
    const auto step = greedy_step(distance, std::span<const Index>(active), vertices, config);
    trace.search_seconds += std::chrono::duration<double>(clock::now() - t_search).count();

    const auto interior = detect_interior<Scalar>(step.winning_column, active, step.chosen, out.tol_interior);
    interior_total += static_cast<Index>(interior.size());
    std::erase_if(active, [&](Index i) {
      return i == step.chosen || std::find(interior.begin(), interior.end(), i) != interior.end();
    });
    vertices.indices.push_back(step.chosen);
    eps = step.eps_hat;

    const auto t_prune = clock::now();
    auto pruned = prune_vertices(distance, vertices, out.tol_interior);
    trace.prune_seconds += std::chrono::duration<double>(clock::now() - t_prune).count();

    trace.iterations.push_back({trace.iteration_count() + 1, step.chosen, step.eps_hat,
                                static_cast<Index>(interior.size()), interior_total, step.evals_used,
                                std::move(pruned)});
  }

  if (active.empty()) {
    eps = 0;
  } else if (trace.iterations.empty()) {
    // No greedy step ran (budget of one vertex): report the actual coverage.
    eps = 0;
    for (Index z : active) eps = std::max(eps, distance(z, vertices.indices));
  }
  vertices.epsilon_achieved = eps;

  trace.solver_calls = distance.calls();
  trace.solver_seconds = distance.seconds();
  trace.total_seconds = std::chrono::duration<double>(clock::now() - t0).count();
  return out;
}

}  // namespace achull
