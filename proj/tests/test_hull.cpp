#include "doctest.h"

#include "achull/hull.hpp"
#include "achull/oracle.hpp"
#include "support.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace achull;
using achull::test::Mat;
using achull::test::make_points;

namespace {

PointSet<double> square_with_center() {
  return make_points({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}});
}

BuildConfig<double> budget(Index v, double eps = 0) {
  BuildConfig<double> c;
  c.max_vertices = v;
  c.epsilon_des = eps;
  return c;
}

Mat rows_of(const PointSet<double>& pts, const std::vector<Index>& idx) {
  Mat m(static_cast<Index>(idx.size()), pts.dim());
  for (std::size_t k = 0; k < idx.size(); ++k) m.row(static_cast<Index>(k)) = pts.row(idx[k]);
  return m;
}

// Coverage re-evaluated from scratch with the public projection routine.
double max_distance_to(const PointSet<double>& pts, const std::vector<Index>& vertices) {
  const Mat hull = rows_of(pts, vertices);
  double worst = 0;
  for (Index z = 0; z < pts.size(); ++z) worst = std::max(worst, distance_to_hull(pts.row(z), hull).distance);
  return worst;
}

std::set<Index> as_set(const std::vector<Index>& v) { return {v.begin(), v.end()}; }

void check_build_invariants(const PointSet<double>& pts, const BuildConfig<double>& cfg,
                            const BuildResult<double>& r) {
  const auto& e = r.vertices.indices;
  CHECK(as_set(e).size() == e.size());
  for (Index i : e) CHECK((i >= 0 && i < pts.size()));
  const auto& its = r.trace.iterations;
  for (std::size_t k = 1; k < its.size(); ++k) CHECK(its[k].eps_hat <= its[k - 1].eps_hat + 1e-9);
  CHECK(r.trace.iteration_count() <= std::min(cfg.max_vertices, pts.size()));
  CHECK(static_cast<Index>(e.size()) <= r.trace.iteration_count() + 1);
  CHECK(static_cast<Index>(e.size()) <= cfg.max_vertices);
  CHECK(max_distance_to(pts, e) <= r.vertices.epsilon_achieved + r.tol_interior);
}

}  // namespace

TEST_CASE("initialize picks the lexicographic minimum") {
  CHECK(initialize(make_points({{0, 0}, {1, 0}, {0, 1}})).indices == std::vector<Index>{0});
  CHECK(initialize(make_points({{1, 5}, {1, 2}, {3, 0}})).indices == std::vector<Index>{1});
}

TEST_CASE("initialize returns an extreme point of random clouds in R^4") {
  std::mt19937_64 rng(40);
  for (int trial = 0; trial < 5; ++trial) {
    const auto pts = deduplicate(achull::test::uniform_matrix(rng, 50, 4)).points;
    const Index i = initialize(pts).indices.front();
    CHECK(oracle::is_extreme(i, pts, 1e-9));
  }
}

TEST_CASE("greedy_step: a single active point is chosen with zero error") {
  const auto pts = make_points({{0, 0}, {3, 1}, {1, 4}});
  const VertexSet<double> e{{0, 1}, 0};
  const std::vector<Index> active{2};
  const auto s = greedy_step(pts, std::span<const Index>(active), e, budget(3));
  CHECK(s.chosen == 2);
  CHECK(s.eps_hat == 0.0);
  CHECK(s.evals_used == 1);
}

TEST_CASE("greedy_step: collinear points, the far endpoint covers the segment") {
  const auto pts = make_points({{0}, {1}, {2}, {3}});
  const VertexSet<double> e{{0}, 0};
  const std::vector<Index> active{1, 2, 3};
  const auto s = greedy_step(pts, std::span<const Index>(active), e, budget(4));
  CHECK(s.chosen == 3);
  CHECK(s.eps_hat <= 1e-12);
}

TEST_CASE("greedy_step agrees with exhaustive evaluation on random 15-point sets") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 6; ++trial) {
    const auto pts = deduplicate(achull::test::uniform_matrix(rng, 15, 2)).points;
    const auto e = initialize(pts);
    std::vector<Index> active;
    for (Index i = 0; i < pts.size(); ++i) {
      if (i != e.indices.front()) active.push_back(i);
    }
    const auto step = greedy_step(pts, std::span<const Index>(active), e, budget(15));

    // Full matrix with the independent projected-gradient solver.
    const auto m = static_cast<Index>(active.size());
    Eigen::MatrixXd full(m, m);
    for (Index j = 0; j < m; ++j) {
      const Mat hull = rows_of(pts, {e.indices.front(), active[j]});
      for (Index i = 0; i < m; ++i) {
        full(i, j) = oracle::reference_projection(pts.row(active[i]), hull, 1e-15 * 8).distance;
      }
    }
    const auto expected = oracle::full_min_max(full);
    CHECK(std::abs(step.eps_hat - expected.value) <= 1e-6);
    CHECK(step.chosen == active[expected.column]);
  }
}

TEST_CASE("detect_interior flags zero entries except the chosen point") {
  const std::vector<double> column{0, 2, 0, 4};
  const std::vector<Index> active{10, 11, 12, 13};
  CHECK(detect_interior<double>(column, active, 99, 1e-9) == std::vector<Index>{10, 12});
  CHECK(detect_interior<double>(column, active, 10, 1e-9) == std::vector<Index>{12});
  const std::vector<double> positive{0.5, 2, 1e-3, 4};
  CHECK(detect_interior<double>(positive, active, 99, 1e-9).empty());
}

TEST_CASE("square center is flagged interior once the fourth corner joins") {
  const auto pts = square_with_center();
  CHECK(oracle::reference_projection(pts.row(4), rows_of(pts, {0, 1, 2, 3}), 1e-16).distance <= 1e-6);
  const VertexSet<double> e{{0, 1, 2}, 0};
  const std::vector<Index> active{3, 4};
  const auto s = greedy_step(pts, std::span<const Index>(active), e, budget(5));
  CHECK(s.chosen == 3);
  const auto interior = detect_interior<double>(s.winning_column, active, s.chosen, 1e-9 * std::sqrt(2.0));
  CHECK(interior == std::vector<Index>{4});
}

TEST_CASE("prune_vertices keeps extreme vertices and drops swallowed ones") {
  const auto tri = make_points({{0, 0}, {4, 0}, {0, 3}});
  CHECK(prune_vertices(tri, VertexSet<double>{{0, 1, 2}, 0}, budget(3)).indices == std::vector<Index>{0, 1, 2});

  const auto seg = make_points({{0, 0}, {2, 0}, {1, 0}});
  CHECK(prune_vertices(seg, VertexSet<double>{{0, 1, 2}, 0}, budget(3)).indices == std::vector<Index>{0, 1});

  CHECK_THROWS_AS(prune_vertices(tri, VertexSet<double>{{}, 0}, budget(3)), ContractViolation);
}

TEST_CASE("prune_vertices on random hexads removes exactly the interior pair") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    // Four points on a circle, two strict convex combinations of them.
    Mat m(6, 2);
    for (int k = 0; k < 4; ++k) {
      const double a = (k + u(rng) * 0.8) * 3.14159265358979 / 2;
      m.row(k) << std::cos(a), std::sin(a);
    }
    for (int k = 4; k < 6; ++k) {
      Eigen::Vector4d w(u(rng), u(rng), u(rng), u(rng));
      w /= w.sum();
      m.row(k) = w.transpose() * m.topRows(4);
    }
    // Shuffle so the interior points are not always last.
    std::vector<Index> perm{0, 1, 2, 3, 4, 5};
    std::shuffle(perm.begin(), perm.end(), rng);
    Mat shuffled(6, 2);
    for (int k = 0; k < 6; ++k) shuffled.row(k) = m.row(perm[k]);
    const PointSet<double> pts(shuffled);

    const auto kept = prune_vertices(pts, VertexSet<double>{{0, 1, 2, 3, 4, 5}, 0}, budget(6)).indices;
    CHECK(kept.size() == 4);
    for (Index i = 0; i < 6; ++i) {
      const bool is_kept = std::find(kept.begin(), kept.end(), i) != kept.end();
      CHECK(is_kept == oracle::is_extreme(i, pts, 1e-9));
    }
  }
}

TEST_CASE("build: a single point needs no iterations") {
  const auto r = build(make_points({{1, 2, 3}}), budget(5));
  CHECK(r.vertices.indices == std::vector<Index>{0});
  CHECK(r.vertices.epsilon_achieved == 0.0);
  CHECK(r.trace.iteration_count() == 0);
}

TEST_CASE("build: square corners plus center gives the four corners exactly") {
  const auto pts = square_with_center();
  const auto cfg = budget(5);
  const auto r = build(pts, cfg);
  CHECK(as_set(r.vertices.indices) == as_set(oracle::exact_hull_2d(pts)));
  CHECK(as_set(r.vertices.indices) == std::set<Index>{0, 1, 2, 3});
  CHECK(r.vertices.epsilon_achieved == 0.0);
  check_build_invariants(pts, cfg, r);
}

TEST_CASE("build: V = N, epsilon 0 recovers the exact planar hull") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const auto pts = deduplicate(achull::test::gaussian_matrix(rng, 50, 2)).points;
    const auto cfg = budget(pts.size());
    const auto r = build(pts, cfg);
    CHECK(as_set(r.vertices.indices) == as_set(oracle::exact_hull_2d(pts)));
    CHECK(max_distance_to(pts, r.vertices.indices) <= r.tol_interior);
    check_build_invariants(pts, cfg, r);
  }
}

TEST_CASE("build: budgets and targets stop the iteration") {
  std::mt19937_64 rng(44);
  const auto pts = deduplicate(achull::test::gaussian_matrix(rng, 60, 3)).points;

  for (Index v : {1, 2, 4, 7}) {
    const auto cfg = budget(v);
    const auto r = build(pts, cfg);
    CHECK(static_cast<Index>(r.vertices.indices.size()) <= v);
    check_build_invariants(pts, cfg, r);
  }

  const auto loose = build(pts, budget(60, 0.5));
  CHECK(loose.vertices.epsilon_achieved <= 0.5);
  CHECK(loose.trace.iterations.back().eps_hat <= 0.5);
  for (std::size_t k = 0; k + 1 < loose.trace.iterations.size(); ++k) {
    CHECK(loose.trace.iterations[k].eps_hat > 0.5);
  }
  check_build_invariants(pts, budget(60, 0.5), loose);
}

TEST_CASE("build: epsilon decreases with the vertex budget") {
  std::mt19937_64 rng(45);
  const auto pts = deduplicate(achull::test::gaussian_matrix(rng, 80, 5)).points;
  double previous = std::numeric_limits<double>::infinity();
  for (Index v = 2; v <= 12; v += 2) {
    const double eps = build(pts, budget(v)).vertices.epsilon_achieved;
    CHECK(eps <= previous + 1e-9);
    previous = eps;
  }
}

TEST_CASE("build: deterministic and seeded-random tie modes are reproducible") {
  // Integer grid: many exact ties in the directed search.
  Mat grid(25, 2);
  for (int i = 0; i < 25; ++i) grid.row(i) << i % 5, i / 5;
  const PointSet<double> pts(grid);
  auto cfg = budget(25);
  const auto a = build(pts, cfg);
  const auto b = build(pts, cfg);
  CHECK(a.vertices.indices == b.vertices.indices);
  CHECK(as_set(a.vertices.indices) == std::set<Index>{0, 4, 20, 24});

  cfg.tie = {TieMode::seeded_random, 77};
  const auto c = build(pts, cfg);
  const auto d = build(pts, cfg);
  CHECK(c.vertices.indices == d.vertices.indices);
  CHECK(as_set(c.vertices.indices) == std::set<Index>{0, 4, 20, 24});
  check_build_invariants(pts, cfg, c);
}

TEST_CASE("build: interior sets and vertices stay disjoint in the trace") {
  std::mt19937_64 rng(46);
  const auto pts = deduplicate(achull::test::uniform_matrix(rng, 70, 2)).points;
  const auto r = build(pts, budget(70));
  Index last_total = 0;
  for (const auto& it : r.trace.iterations) {
    CHECK(it.interior_total == last_total + it.interior_added);
    last_total = it.interior_total;
    CHECK(it.evals_used >= 1);
  }
  // Every point is a vertex, interior, or a pruned vertex.
  Index pruned = 0;
  for (const auto& it : r.trace.iterations) pruned += static_cast<Index>(it.pruned.size());
  CHECK(static_cast<Index>(r.vertices.indices.size()) + last_total + pruned == pts.size());
}

TEST_CASE("build rejects invalid configurations") {
  const auto pts = square_with_center();
  CHECK_THROWS_AS(build(pts, budget(0)), ContractViolation);
  CHECK_THROWS_AS(build(pts, budget(3, -1.0)), ContractViolation);
  auto cfg = budget(3);
  cfg.tol_interior = 0.0;
  CHECK_THROWS_AS(build(pts, cfg), ContractViolation);
}

TEST_CASE("build is invariant under uniform rescaling") {
  std::mt19937_64 rng(47);
  const Mat raw = achull::test::gaussian_matrix(rng, 40, 3);
  const PointSet<double> a(raw);
  const PointSet<double> b(Mat(raw * 1e6));
  const auto ra = build(a, budget(8));
  const auto rb = build(b, budget(8));
  CHECK(ra.vertices.indices == rb.vertices.indices);
  CHECK(rb.vertices.epsilon_achieved == doctest::Approx(ra.vertices.epsilon_achieved * 1e6).epsilon(1e-9));
}
