#pragma once

#include "achull/errors.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

namespace achull {

using Index = Eigen::Index;

template <typename Scalar>
using RowMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

namespace detail {

// Strict weak lexicographic order on two rows of the same matrix.
template <typename Derived>
bool row_less(const Eigen::MatrixBase<Derived>& m, Index a, Index b) {
  for (Index c = 0; c < m.cols(); ++c) {
    if (m(a, c) < m(b, c)) return true;
    if (m(b, c) < m(a, c)) return false;
  }
  return false;
}

template <typename Derived>
bool row_equal(const Eigen::MatrixBase<Derived>& m, Index a, Index b) {
  return (m.row(a).array() == m.row(b).array()).all();
}

template <typename Derived>
std::vector<Index> lexicographic_order(const Eigen::MatrixBase<Derived>& m) {
  std::vector<Index> order(static_cast<std::size_t>(m.rows()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return row_less(m, a, b); });
  return order;
}

}  // namespace detail

/// Immutable set of N distinct, finite points in R^n, one point per row.
template <typename Scalar>
class PointSet {
 public:
  using Matrix = RowMatrix<Scalar>;

  explicit PointSet(Matrix points) : points_(std::move(points)) {
    if (points_.rows() < 1 || points_.cols() < 1) {
      throw ContractViolation("PointSet requires at least one point of dimension >= 1");
    }
    if (!points_.allFinite()) {
      throw ContractViolation("PointSet coordinates must be finite");
    }
    const auto order = detail::lexicographic_order(points_);
    for (std::size_t k = 1; k < order.size(); ++k) {
      if (detail::row_equal(points_, order[k - 1], order[k])) {
        throw ContractViolation("PointSet rows must be pairwise distinct (deduplicate first)");
      }
    }
  }

  Index size() const { return points_.rows(); }
  Index dim() const { return points_.cols(); }

  const Matrix& matrix() const { return points_; }
  auto row(Index i) const { return points_.row(i); }

 private:
  Matrix points_;
};

template <typename Scalar>
struct Deduplicated {
  PointSet<Scalar> points;
  // source_to_index[r] is the retained index of input row r.
  std::vector<Index> source_to_index;
  Index duplicates_removed = 0;
};

/// Collapses exact duplicate rows. The first occurrence of each distinct row
/// is retained; retained rows keep their relative input order.
template <typename Derived>
Deduplicated<typename Derived::Scalar> deduplicate(const Eigen::MatrixBase<Derived>& raw) {
  using Scalar = typename Derived::Scalar;
  if (raw.rows() < 1 || raw.cols() < 1) {
    throw ContractViolation("cannot build a PointSet from an empty matrix");
  }
  const RowMatrix<Scalar> m = raw;
  const auto order = detail::lexicographic_order(m);

  // Representative of each row = first (smallest source index) equal row.
  std::vector<Index> representative(order.size());
  for (std::size_t k = 0; k < order.size();) {
    std::size_t end = k + 1;
    while (end < order.size() && detail::row_equal(m, order[k], order[end])) ++end;
    // stable_sort keeps equal rows in source order, so order[k] is the first one.
    for (std::size_t q = k; q < end; ++q) representative[order[q]] = order[k];
    k = end;
  }

  std::vector<Index> kept_index(order.size(), -1);
  std::vector<Index> kept_rows;
  for (Index r = 0; r < m.rows(); ++r) {
    if (representative[r] == r) {
      kept_index[r] = static_cast<Index>(kept_rows.size());
      kept_rows.push_back(r);
    }
  }

  RowMatrix<Scalar> unique(static_cast<Index>(kept_rows.size()), m.cols());
  for (std::size_t k = 0; k < kept_rows.size(); ++k) unique.row(k) = m.row(kept_rows[k]);

  std::vector<Index> source_to_index(order.size());
  for (Index r = 0; r < m.rows(); ++r) source_to_index[r] = kept_index[representative[r]];

  return {PointSet<Scalar>(std::move(unique)), std::move(source_to_index),
          m.rows() - static_cast<Index>(kept_rows.size())};
}

/// Diagonal of the axis-aligned bounding box. An O(Nn) upper bound on the
/// true diameter, used to scale tolerances.
template <typename Derived>
typename Derived::Scalar data_diameter(const Eigen::MatrixBase<Derived>& points) {
  if (points.rows() < 1) throw ContractViolation("data_diameter requires at least one point");
  return (points.colwise().maxCoeff() - points.colwise().minCoeff()).norm();
}

template <typename Scalar>
Scalar data_diameter(const PointSet<Scalar>& points) {
  return data_diameter(points.matrix());
}

}  // namespace achull
