#pragma once

#include "achull/point_set.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>

namespace achull::test {

using Mat = RowMatrix<double>;
using Vec = Vector<double>;

inline Mat uniform_matrix(std::mt19937_64& rng, Index rows, Index cols, double lo = -1, double hi = 1) {
  std::uniform_real_distribution<double> u(lo, hi);
  Mat m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index c = 0; c < cols; ++c) m(i, c) = u(rng);
  }
  return m;
}

inline Mat gaussian_matrix(std::mt19937_64& rng, Index rows, Index cols) {
  std::normal_distribution<double> g;
  Mat m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index c = 0; c < cols; ++c) m(i, c) = g(rng);
  }
  return m;
}

inline Vec uniform_vector(std::mt19937_64& rng, Index n, double lo = -1, double hi = 1) {
  return uniform_matrix(rng, n, 1, lo, hi).col(0);
}

// Haar-ish random rotation from the QR of a Gaussian matrix.
inline Eigen::MatrixXd random_rotation(std::mt19937_64& rng, Index n) {
  const Eigen::MatrixXd g = gaussian_matrix(rng, n, n);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1;
  return q;
}

inline PointSet<double> make_points(std::initializer_list<std::initializer_list<double>> rows) {
  Mat m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& r : rows) {
    Index c = 0;
    for (double v : r) m(i, c++) = v;
    ++i;
  }
  return PointSet<double>(std::move(m));
}

}  // namespace achull::test
