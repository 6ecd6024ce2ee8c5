#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace achull {

// Raised when a caller breaks a documented precondition: mismatched
// dimensions, empty inputs, non-finite coordinates, invalid configuration.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The projection solver hit its iteration cap (or stalled) before the
// optimality certificate was satisfied. Carries the best iterate found.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, Eigen::VectorXd best_weights,
                   double residual_gap, int iterations)
      : std::runtime_error(what),
        best_weights_(std::move(best_weights)),
        residual_gap_(residual_gap),
        iterations_(iterations) {}

  const Eigen::VectorXd& best_weights() const { return best_weights_; }
  double residual_gap() const { return residual_gap_; }
  int iterations() const { return iterations_; }

 private:
  Eigen::VectorXd best_weights_;
  double residual_gap_;
  int iterations_;
};

// Malformed CSV input. Row and column are 1-based; column 0 means the whole row.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t row, std::size_t column = 0)
      : std::runtime_error(what), row_(row), column_(column) {}

  std::size_t row() const { return row_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

}  // namespace achull
