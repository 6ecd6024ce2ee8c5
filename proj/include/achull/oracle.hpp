#pragma once

// Slow, independent references for testing: exhaustive min-max, projected
// gradient projection onto a hull, extremeness by leave-one-out distance,
// and gift wrapping in the plane. Nothing here shares code paths with the
// production solver or search.

#include "achull/errors.hpp"
#include "achull/point_set.hpp"
#include "achull/projection.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace achull::oracle {

template <typename Scalar>
struct FullMinMax {
  Index column = 0;
  Scalar value = 0;
};

/// Evaluates every entry; lowest column index wins ties.
template <typename Derived>
FullMinMax<typename Derived::Scalar> full_min_max(const Eigen::MatrixBase<Derived>& matrix) {
  if (matrix.rows() < 1 || matrix.cols() < 1) throw ContractViolation("full_min_max requires a non-empty matrix");
  FullMinMax<typename Derived::Scalar> best{0, matrix.col(0).maxCoeff()};
  for (Index j = 1; j < matrix.cols(); ++j) {
    const auto m = matrix.col(j).maxCoeff();
    if (m < best.value) best = {j, m};
  }
  return best;
}

/// Euclidean projection of v onto the unit simplex (sort and threshold).
template <typename Scalar>
Vector<Scalar> project_to_simplex(const Vector<Scalar>& v) {
  std::vector<Scalar> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  Scalar cumulative = 0;
  Scalar theta = 0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cumulative += u[k];
    const Scalar t = (cumulative - 1) / static_cast<Scalar>(k + 1);
    if (u[k] - t > 0) theta = t;
  }
  return (v.array() - theta).max(Scalar(0)).matrix();
}

namespace impl {

// Accelerated projected gradient on f(a) = |Y^T a|^2 over the simplex, with
// gradient-based restart. Stops when done(f(a), gap(a)) is true, where gap is
// the Frank-Wolfe certificate a^T Q a - min(Q a), so that f* >= f - 2 gap.
template <typename Scalar, typename Done>
std::pair<Vector<Scalar>, int> simplex_descent(const achull::detail::DenseMatrix<Scalar>& q, Done done,
                                               int max_iterations) {
  const Index m = q.rows();
  Vector<Scalar> alpha = Vector<Scalar>::Constant(m, Scalar(1) / static_cast<Scalar>(m));
  Index nearest = 0;
  if (q.diagonal().minCoeff(&nearest) < alpha.dot(q * alpha)) {
    alpha.setZero();
    alpha(nearest) = 1;
  }
  using Solver = Eigen::SelfAdjointEigenSolver<achull::detail::DenseMatrix<Scalar>>;
  const Scalar lambda_max = Solver(q, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();

  Vector<Scalar> qa = q * alpha;
  Vector<Scalar> momentum_point = alpha;
  Scalar t = 1;
  int it = 0;
  while (!done(alpha.dot(qa), alpha.dot(qa) - qa.minCoeff()) && lambda_max > 0) {
    if (++it > max_iterations) {
      throw ConvergenceError("reference projection did not converge", alpha.template cast<double>(),
                             static_cast<double>(alpha.dot(qa) - qa.minCoeff()), it);
    }
    const Vector<Scalar> next = project_to_simplex<Scalar>(momentum_point - (q * momentum_point) / lambda_max);
    const Vector<Scalar> step = next - alpha;
    if ((momentum_point - next).dot(step) > 0) {
      // Momentum points uphill: restart from the new iterate.
      t = 1;
      momentum_point = next;
    } else {
      const Scalar t_next = (1 + std::sqrt(1 + 4 * t * t)) / 2;
      momentum_point = next + ((t - 1) / t_next) * step;
      t = t_next;
    }
    alpha = next;
    qa = q * alpha;
  }
  return {alpha, it};
}

}  // namespace impl

/// Projection onto conv(candidates) by accelerated projected gradient over the
/// simplex weights with a fixed 1/L step and momentum restarts, started from
/// the best vertex or the barycenter, stopped when the optimality certificate
/// drops to tol.
template <typename DerivedZ, typename DerivedX>
Projection<typename DerivedX::Scalar> reference_projection(const Eigen::MatrixBase<DerivedZ>& z,
                                                           const Eigen::MatrixBase<DerivedX>& candidates,
                                                           typename DerivedX::Scalar tol,
                                                           int max_iterations = 2'000'000) {
  using Scalar = typename DerivedX::Scalar;
  if (candidates.rows() < 1) throw ContractViolation("reference_projection requires a candidate");
  if (z.size() != candidates.cols()) throw ContractViolation("dimension mismatch");

  const Vector<Scalar> query = z.reshaped();
  const RowMatrix<Scalar> y = candidates.rowwise() - query.transpose();
  const detail::DenseMatrix<Scalar> q = y * y.transpose();
  const auto [alpha, it] =
      impl::simplex_descent<Scalar>(q, [tol](Scalar, Scalar gap) { return gap <= tol; }, max_iterations);

  const Vector<Scalar> x = y.transpose() * alpha;
  Projection<Scalar> out;
  out.distance = x.norm();
  out.weights = alpha;
  out.point = query + x;
  out.certificate_gap = std::max(Scalar(0), x.squaredNorm() - (y * x).minCoeff());
  out.iterations = it;
  return out;
}

/// True iff point i is farther than tol from the hull of the other points.
/// Iterates only until the duality bounds put the distance on one side of tol.
template <typename Scalar>
bool is_extreme(Index i, const PointSet<Scalar>& points, Scalar tol) {
  if (points.size() < 2) throw ContractViolation("is_extreme requires at least two points");
  RowMatrix<Scalar> y(points.size() - 1, points.dim());
  for (Index r = 0, k = 0; r < points.size(); ++r) {
    if (r != i) y.row(k++) = points.row(r) - points.row(i);
  }
  const detail::DenseMatrix<Scalar> q = y * y.transpose();
  const Scalar tol2 = tol * tol;
  bool extreme = false;
  impl::simplex_descent<Scalar>(
      q,
      [&](Scalar f, Scalar gap) {
        if (f <= tol2) return true;
        if (f - 2 * gap > tol2) return extreme = true;
        return false;
      },
      2'000'000);
  return extreme;
}

/// Extreme points of a planar set in counter-clockwise order, starting at
/// the lexicographically smallest point. Collinear boundary points are not
/// vertices.
template <typename Scalar>
std::vector<Index> exact_hull_2d(const PointSet<Scalar>& points) {
  if (points.dim() != 2) throw ContractViolation("exact_hull_2d requires planar points");
  const auto& p = points.matrix();
  const Index n = points.size();
  if (n == 1) return {0};

  Index start = 0;
  for (Index i = 1; i < n; ++i) {
    if (achull::detail::row_less(p, i, start)) start = i;
  }
  const auto cross = [&](Index o, Index a, Index b) {
    return (p(a, 0) - p(o, 0)) * (p(b, 1) - p(o, 1)) - (p(a, 1) - p(o, 1)) * (p(b, 0) - p(o, 0));
  };
  const auto dist2 = [&](Index a, Index b) { return (p.row(a) - p.row(b)).squaredNorm(); };

  std::vector<Index> hull;
  Index current = start;
  do {
    hull.push_back(current);
    Index next = current == 0 ? 1 : 0;
    for (Index c = 0; c < n; ++c) {
      if (c == current || c == next) continue;
      const Scalar turn = cross(current, next, c);
      // c is clockwise of current->next, or collinear and farther.
      if (turn < 0 || (turn == 0 && dist2(current, c) > dist2(current, next))) next = c;
    }
    current = next;
  } while (current != start && static_cast<Index>(hull.size()) <= n);
  return hull;
}

}  // namespace achull::oracle
