#pragma once

// Euclidean projection of a point onto the convex hull of a finite candidate
// set: min ||z - sum_i a_i x_i||^2 over the unit simplex.
//
// The solver is Wolfe's minimum-norm-point (corral) method applied to the
// translated candidates x_i - z. The iteration only needs inner products
// between translated candidates, so it runs on an m x m Gram matrix; the final
// point, distance and optimality certificate are always recomputed from
// explicit coordinates.

#include "achull/errors.hpp"
#include "achull/point_set.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace achull {

inline constexpr double kRelativeTolerance = 1e-9;

template <typename Scalar = double>
struct SolverConfig {
  // Absolute bound on the optimality certificate max_j (z-p).(x_j-p).
  // Unset: kRelativeTolerance * diameter^2 of the problem's bounding box.
  std::optional<Scalar> tol_opt;
  int max_iterations = 1000;
  // Inner stopping accuracy relative to the largest squared candidate
  // distance. The certificate is still judged against tol_opt.
  Scalar epsilon0 = Scalar(1e-12);
};

template <typename Scalar>
void validate(const SolverConfig<Scalar>& config) {
  if (config.tol_opt && !(*config.tol_opt > 0)) {
    throw ContractViolation("SolverConfig.tol_opt must be positive");
  }
  if (config.max_iterations < 1) {
    throw ContractViolation("SolverConfig.max_iterations must be >= 1");
  }
  if (!(config.epsilon0 > 0)) {
    throw ContractViolation("SolverConfig.epsilon0 must be positive");
  }
}

/// Scale-relative tolerance, floored so it stays strictly positive for
/// degenerate (zero-extent) data.
template <typename Scalar>
Scalar relative_tolerance(Scalar scale) {
  return std::max(Scalar(kRelativeTolerance) * scale, std::numeric_limits<Scalar>::min());
}

template <typename Scalar>
Scalar resolve_tol_opt(const SolverConfig<Scalar>& config, Scalar diameter) {
  return config.tol_opt ? *config.tol_opt : relative_tolerance(diameter * diameter);
}

template <typename Scalar>
struct Projection {
  Scalar distance = 0;
  // Convex weights over the candidates, in candidate order.
  Vector<Scalar> weights;
  // p = sum_i weights_i x_i
  Vector<Scalar> point;
  // max_j (z - p).(x_j - p); <= tol_opt on every returned projection.
  Scalar certificate_gap = 0;
  int iterations = 0;
};

namespace detail {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
struct Corral {
  std::vector<Index> support;
  Vector<Scalar> weights;  // aligned with support, strictly positive, sums to 1
  int iterations = 0;
  bool capped = false;
};

// Affine minimum-norm point of the translated candidates in `support`,
// returned as affine weights (sum 1, any sign).
template <typename Scalar>
Vector<Scalar> affine_min_norm(const DenseMatrix<Scalar>& gram, const std::vector<Index>& support) {
  const auto s = static_cast<Index>(support.size());
  Vector<Scalar> v(s);
  if (s == 1) {
    v(0) = 1;
    return v;
  }
  const Index b = support[0];
  DenseMatrix<Scalar> lhs(s - 1, s - 1);
  Vector<Scalar> rhs(s - 1);
  for (Index a = 1; a < s; ++a) {
    const Index ia = support[a];
    rhs(a - 1) = gram(b, b) - gram(ia, b);
    for (Index c = 1; c < s; ++c) {
      const Index ic = support[c];
      lhs(a - 1, c - 1) = gram(ia, ic) - gram(ia, b) - gram(b, ic) + gram(b, b);
    }
  }
  const Vector<Scalar> u = lhs.completeOrthogonalDecomposition().solve(rhs);
  v(0) = Scalar(1) - u.sum();
  v.tail(s - 1) = u;
  return v;
}

template <typename Scalar>
Scalar corral_objective(const DenseMatrix<Scalar>& gram, const std::vector<Index>& support,
                        const Vector<Scalar>& w) {
  Scalar total = 0;
  for (std::size_t a = 0; a < support.size(); ++a) {
    for (std::size_t c = 0; c < support.size(); ++c) {
      total += w(a) * w(c) * gram(support[a], support[c]);
    }
  }
  return total;
}

// Wolfe's minimum-norm-point iteration on the Gram matrix of translated
// candidates. Stops when the duality gap drops to tol_stop, when a major
// step fails to decrease the objective, or at the iteration cap.
template <typename Scalar>
Corral<Scalar> min_norm_corral(const DenseMatrix<Scalar>& gram, Scalar tol_stop, int max_iterations) {
  const Index m = gram.rows();
  Corral<Scalar> out;
  Index start = 0;
  gram.diagonal().minCoeff(&start);
  out.support = {start};
  out.weights = Vector<Scalar>::Ones(1);

  Vector<Scalar> g(m);
  for (;;) {
    g.setZero();
    for (std::size_t a = 0; a < out.support.size(); ++a) {
      g.noalias() += out.weights(a) * gram.col(out.support[a]);
    }
    Scalar xx = 0;
    for (std::size_t a = 0; a < out.support.size(); ++a) xx += out.weights(a) * g(out.support[a]);

    Index entering = 0;
    const Scalar g_min = g.minCoeff(&entering);
    if (xx - g_min <= tol_stop) break;
    if (std::find(out.support.begin(), out.support.end(), entering) != out.support.end()) break;
    if (++out.iterations > max_iterations) {
      out.capped = true;
      break;
    }

    const auto prev_support = out.support;
    const Vector<Scalar> prev_weights = out.weights;

    out.support.push_back(entering);
    out.weights.conservativeResize(out.weights.size() + 1);
    out.weights(out.weights.size() - 1) = 0;

    // Minor cycle: move toward the affine minimizer until it is strictly
    // inside the simplex of the current support.
    for (;;) {
      const Vector<Scalar> v = affine_min_norm(gram, out.support);
      if ((v.array() > 0).all()) {
        out.weights = v;
        break;
      }
      Scalar theta = 1;
      Index blocking = -1;
      for (Index a = 0; a < v.size(); ++a) {
        if (v(a) > 0) continue;
        const Scalar denom = out.weights(a) - v(a);
        const Scalar t = denom > 0 ? out.weights(a) / denom : Scalar(0);
        if (blocking < 0 || t < theta) {
          theta = t;
          blocking = a;
        }
      }
      Vector<Scalar> w = (Scalar(1) - theta) * out.weights + theta * v;
      std::vector<Index> kept_support;
      std::vector<Scalar> kept_weights;
      for (Index a = 0; a < w.size(); ++a) {
        if (a == blocking || w(a) <= 0) continue;
        kept_support.push_back(out.support[a]);
        kept_weights.push_back(w(a));
      }
      if (kept_support.empty()) break;
      out.support = std::move(kept_support);
      out.weights = Eigen::Map<Vector<Scalar>>(kept_weights.data(), static_cast<Index>(kept_weights.size()));
      out.weights /= out.weights.sum();
      if (++out.iterations > max_iterations) {
        out.capped = true;
        break;
      }
    }

    if (out.support.empty() || !(corral_objective(gram, out.support, out.weights) < xx)) {
      out.support = prev_support;
      out.weights = prev_weights;
      break;
    }
    if (out.capped) break;
  }
  return out;
}

// Finishes a projection from explicit translated candidates (rows of
// `translated` are x_i - z). `gram` may be an approximation of
// translated * translated^T; if the certificate fails with it, the exact
// Gram matrix is formed and the iteration repeated once.
template <typename Scalar>
Projection<Scalar> project_translated(const RowMatrix<Scalar>& translated,
                                      const Eigen::Ref<const Vector<Scalar>>& z,
                                      std::optional<DenseMatrix<Scalar>> gram, Scalar tol_opt,
                                      const SolverConfig<Scalar>& config) {
  const Index m = translated.rows();
  const bool exact_gram = !gram.has_value();
  if (exact_gram) gram = translated * translated.transpose();

  Projection<Scalar> best;
  for (int attempt = 0;; ++attempt) {
    const Scalar scale2 = std::max(gram->diagonal().maxCoeff(), Scalar(0));
    const Scalar tol_stop = std::min(tol_opt, config.epsilon0 * scale2);
    const auto corral = min_norm_corral(*gram, tol_stop, config.max_iterations);

    Vector<Scalar> alpha = Vector<Scalar>::Zero(m);
    for (std::size_t a = 0; a < corral.support.size(); ++a) {
      alpha(corral.support[a]) = std::max(corral.weights(a), Scalar(0));
    }
    alpha /= alpha.sum();

    const Vector<Scalar> x = translated.transpose() * alpha;
    const Scalar xx = x.squaredNorm();
    const Scalar gap = std::max(Scalar(0), xx - (translated * x).minCoeff());

    best.distance = std::sqrt(xx);
    best.weights = std::move(alpha);
    best.point = z + x;
    best.certificate_gap = gap;
    best.iterations += corral.iterations;
    if (gap <= tol_opt) return best;

    if (attempt == 0 && !exact_gram) {
      gram = translated * translated.transpose();
      continue;
    }
    throw ConvergenceError(
        corral.capped ? "projection solver reached its iteration cap before the optimality certificate held"
                      : "projection solver stalled before the optimality certificate held",
        best.weights.template cast<double>(), static_cast<double>(gap), best.iterations);
  }
}

template <typename DerivedZ>
void check_query(const Eigen::MatrixBase<DerivedZ>& z, Index dim) {
  if (z.rows() != 1 && z.cols() != 1) throw ContractViolation("query point must be a vector");
  if (z.size() != dim) throw ContractViolation("query point dimension does not match candidates");
  if (!z.allFinite()) throw ContractViolation("query point must be finite");
}

}  // namespace detail

/// Distance from z to conv(candidates), where candidates holds one point per
/// row. Returns the minimizing convex weights, the projected point and the
/// optimality certificate value.
template <typename DerivedZ, typename DerivedX>
Projection<typename DerivedX::Scalar> distance_to_hull(
    const Eigen::MatrixBase<DerivedZ>& z, const Eigen::MatrixBase<DerivedX>& candidates,
    const SolverConfig<typename DerivedX::Scalar>& config = {}) {
  using Scalar = typename DerivedX::Scalar;
  validate(config);
  if (candidates.rows() < 1) throw ContractViolation("distance_to_hull requires at least one candidate");
  detail::check_query(z, candidates.cols());
  if (!candidates.allFinite()) throw ContractViolation("candidates must be finite");

  const Vector<Scalar> query = z.reshaped();
  const RowMatrix<Scalar> translated = candidates.rowwise() - query.transpose();

  const Scalar diameter = data_diameter(
      (RowMatrix<Scalar>(candidates.rows() + 1, candidates.cols()) << candidates, query.transpose())
          .finished());
  return detail::project_translated<Scalar>(translated, query, std::nullopt,
                                            resolve_tol_opt(config, diameter), config);
}

/// Projection queries where both the query point and the candidates are
/// members of one PointSet. Inner products are served from a precomputed
/// Gram matrix of the centered data when it fits the memory budget, so the
/// per-query iteration cost is independent of the dimension.
template <typename Scalar>
class IndexedProjector {
 public:
  // Largest N for which the N x N Gram matrix is cached.
  static constexpr Index kGramLimit = 4096;

  IndexedProjector(const PointSet<Scalar>& points, const SolverConfig<Scalar>& config)
      : config_(config) {
    validate(config_);
    centroid_ = points.matrix().colwise().mean().transpose();
    centered_ = points.matrix().rowwise() - centroid_.transpose();
    tol_opt_ = resolve_tol_opt(config_, data_diameter(points));
    if (points.size() <= kGramLimit) gram_ = centered_ * centered_.transpose();
  }

  Scalar tol_opt() const { return tol_opt_; }
  Index size() const { return centered_.rows(); }

  /// d(x_query, conv{x_c : c in candidates}). Thread-safe.
  Projection<Scalar> operator()(Index query, std::span<const Index> candidates) const {
    if (candidates.empty()) throw ContractViolation("projection requires at least one candidate");
    const auto m = static_cast<Index>(candidates.size());
    RowMatrix<Scalar> translated(m, centered_.cols());
    for (Index a = 0; a < m; ++a) translated.row(a) = centered_.row(candidates[a]) - centered_.row(query);

    std::optional<detail::DenseMatrix<Scalar>> gram;
    if (gram_) {
      const auto& g = *gram_;
      detail::DenseMatrix<Scalar> k(m, m);
      const Scalar gzz = g(query, query);
      for (Index a = 0; a < m; ++a) {
        const Index ca = candidates[a];
        for (Index c = a; c < m; ++c) {
          const Index cc = candidates[c];
          k(a, c) = k(c, a) = g(ca, cc) - g(ca, query) - g(cc, query) + gzz;
        }
      }
      gram = std::move(k);
    }
    auto projection = detail::project_translated<Scalar>(translated, centered_.row(query).transpose(),
                                                         std::move(gram), tol_opt_, config_);
    projection.point += centroid_;
    return projection;
  }

 private:
  SolverConfig<Scalar> config_;
  Vector<Scalar> centroid_;
  RowMatrix<Scalar> centered_;
  std::optional<detail::DenseMatrix<Scalar>> gram_;
  Scalar tol_opt_ = 0;
};

}  // namespace achull
