#pragma once

// Directed search for argmin_j max_i E(i, j) over an implicit matrix whose
// entries are expensive to evaluate. The running maximum of the entries seen
// so far in a column is a lower bound on that column's true maximum, so the
// search keeps extending whichever column currently has the smallest bound and
// stops as soon as that column is fully evaluated.

#include "achull/errors.hpp"
#include "achull/point_set.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

namespace achull {

enum class TieMode { deterministic, seeded_random };

struct TieBreak {
  TieMode mode = TieMode::deterministic;
  std::uint64_t seed = 0;
};

struct SearchOptions {
  TieBreak tie;
  // Workers for the first-row evaluation. The oracle must be safe to call
  // concurrently when this exceeds 1.
  unsigned threads = 1;
};

/// E(i, j) with known shape. Entries must be deterministic within a search.
template <typename O>
concept MatrixOracle = requires(const O& oracle, Index i, Index j) {
  { oracle.rows() } -> std::convertible_to<Index>;
  { oracle.cols() } -> std::convertible_to<Index>;
  { oracle(i, j) } -> std::floating_point;
};

template <typename Scalar>
struct SearchState {
  std::vector<Scalar> col_max;     // running maximum per column
  std::vector<Index> col_count;    // evaluated rows per column (rows 0..count-1)
  std::vector<std::vector<Scalar>> evaluated;
};

template <typename Scalar>
struct MinMaxResult {
  Index column = 0;  // 0-based
  Scalar value = 0;
  std::vector<Scalar> winning_column;
  Index evals_used = 0;
};

/// Adapts a dense Eigen matrix (or expression) to MatrixOracle.
template <typename Derived>
class DenseOracle {
 public:
  explicit DenseOracle(const Eigen::MatrixBase<Derived>& m) : m_(m.derived()) {}
  Index rows() const { return m_.rows(); }
  Index cols() const { return m_.cols(); }
  typename Derived::Scalar operator()(Index i, Index j) const { return m_(i, j); }

 private:
  const Derived& m_;
};

namespace detail {

template <typename Scalar>
class ColumnPicker {
 public:
  explicit ColumnPicker(const TieBreak& tie) : mode_(tie.mode), rng_(tie.seed) {}

  Index operator()(const std::vector<Scalar>& col_max) {
    if (mode_ == TieMode::deterministic) {
      return static_cast<Index>(std::min_element(col_max.begin(), col_max.end()) - col_max.begin());
    }
    const Scalar best = *std::min_element(col_max.begin(), col_max.end());
    ties_.clear();
    for (std::size_t j = 0; j < col_max.size(); ++j) {
      if (col_max[j] == best) ties_.push_back(static_cast<Index>(j));
    }
    if (ties_.size() == 1) return ties_.front();
    std::uniform_int_distribution<std::size_t> pick(0, ties_.size() - 1);
    return ties_[pick(rng_)];
  }

 private:
  TieMode mode_;
  std::mt19937_64 rng_;
  std::vector<Index> ties_;
};

template <typename Scalar, typename Oracle>
void evaluate_first_row(const Oracle& oracle, std::vector<Scalar>& row, unsigned threads) {
  const Index cols = oracle.cols();
  const auto workers = static_cast<Index>(std::clamp<Index>(threads, 1, cols));
  if (workers == 1) {
    for (Index j = 0; j < cols; ++j) row[j] = static_cast<Scalar>(oracle(0, j));
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (Index w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (Index j = w; j < cols; j += workers) row[j] = static_cast<Scalar>(oracle(0, j));
    });
  }
}

}  // namespace detail

template <MatrixOracle Oracle>
auto directed_min_max(const Oracle& oracle, const SearchOptions& options = {}) {
  using Scalar = std::decay_t<decltype(oracle(Index{0}, Index{0}))>;
  const Index rows = oracle.rows();
  const Index cols = oracle.cols();
  if (rows < 1 || cols < 1) throw ContractViolation("directed_min_max requires a non-empty matrix");

  SearchState<Scalar> state;
  state.col_max.resize(static_cast<std::size_t>(cols));
  state.col_count.assign(static_cast<std::size_t>(cols), 1);
  state.evaluated.resize(static_cast<std::size_t>(cols));

  detail::evaluate_first_row<Scalar>(oracle, state.col_max, options.threads);
  for (Index j = 0; j < cols; ++j) {
    state.evaluated[j].reserve(static_cast<std::size_t>(rows));
    state.evaluated[j].push_back(state.col_max[j]);
  }
  Index evals = cols;

  detail::ColumnPicker<Scalar> pick(options.tie);
  Index j = pick(state.col_max);
  while (state.col_count[j] < rows) {
    const Scalar e = static_cast<Scalar>(oracle(state.col_count[j], j));
    ++evals;
    state.evaluated[j].push_back(e);
    ++state.col_count[j];
    state.col_max[j] = std::max(state.col_max[j], e);
    j = pick(state.col_max);
  }

  MinMaxResult<Scalar> out;
  out.column = j;
  out.value = state.col_max[j];
  out.winning_column = std::move(state.evaluated[j]);
  out.evals_used = evals;
  return out;
}

template <typename Derived>
auto directed_min_max(const Eigen::MatrixBase<Derived>& matrix, const SearchOptions& options = {}) {
  return directed_min_max(DenseOracle<Derived>(matrix), options);
}

}  // namespace achull
