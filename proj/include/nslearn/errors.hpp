#ifndef NSLEARN_ERRORS_HPP
#define NSLEARN_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace nslearn {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An operation received an empty vector or panel.
class EmptyInput : public Error {
public:
  using Error::Error;
};

/// A value that must be finite (panel entry, weight, ...) was NaN or infinite.
class NonFiniteValue : public Error {
public:
  using Error::Error;
};

/// Vector lengths, matrix shapes or panel orientations do not agree.
class ShapeMismatch : public Error {
public:
  using Error::Error;
};

/// Split boundary outside [1, extent - 1] along the chosen axis.
class InvalidSplit : public Error {
public:
  using Error::Error;
};

/// Nash-Sutcliffe quantities need realization vectors of length >= 2.
class DimensionTooSmall : public Error {
public:
  using Error::Error;
};

/// Centered sum of squares of a realization vanished (or fell below the
/// overflow floor), so the Nash-Sutcliffe weight is undefined.
class ZeroVariance : public Error {
public:
  explicit ZeroVariance(const std::string& what, std::ptrdiff_t series = -1)
      : Error(what), series_(series) {}

  /// Index of the offending realization, or -1 when not applicable.
  std::ptrdiff_t series() const noexcept { return series_; }

private:
  std::ptrdiff_t series_;
};

/// Realized loss of the reference predictions is zero; the skill score
/// denominator is degenerate.
class DegenerateReference : public Error {
public:
  using Error::Error;
};

/// Augmented design matrix is numerically rank deficient.
class RankDeficient : public Error {
public:
  explicit RankDeficient(const std::string& what, double condition_estimate)
      : Error(what), condition_estimate_(condition_estimate) {}

  double condition_estimate() const noexcept { return condition_estimate_; }

private:
  double condition_estimate_;
};

/// Iterative minimization hit its iteration cap before the gradient norm
/// dropped below tolerance. Carries the last iterate.
class NoConvergence : public Error {
public:
  NoConvergence(const std::string& what, Eigen::VectorXd last_iterate)
      : Error(what), last_iterate_(std::move(last_iterate)) {}

  const Eigen::VectorXd& last_iterate() const noexcept { return last_iterate_; }

private:
  Eigen::VectorXd last_iterate_;
};

/// Covariance matrix is not symmetric positive semidefinite.
class InvalidCovariance : public Error {
public:
  using Error::Error;
};

/// Rejection sampler acceptance rate fell below the configured floor.
class RejectionTooAggressive : public Error {
public:
  using Error::Error;
};

/// CSV ingestion: file not found or unreadable.
class MissingFile : public Error {
public:
  using Error::Error;
};

/// CSV ingestion: rows have differing cell counts.
class RaggedRows : public Error {
public:
  using Error::Error;
};

/// CSV ingestion: a cell is empty or does not parse as a number.
/// Coordinates are 1-based and refer to the file, header included.
class NonNumericCell : public Error {
public:
  NonNumericCell(const std::string& what, std::size_t row, std::size_t col)
      : Error(what), row_(row), col_(col) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

private:
  std::size_t row_;
  std::size_t col_;
};

/// Lagged design construction needs more time steps than the lag order.
class TooShort : public Error {
public:
  using Error::Error;
};

}  // namespace nslearn

#endif  // NSLEARN_ERRORS_HPP
