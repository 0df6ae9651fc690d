#ifndef NSLEARN_DESIGN_HPP
#define NSLEARN_DESIGN_HPP

#include <sstream>
#include <utility>

#include <Eigen/Core>

#include "nslearn/errors.hpp"
#include "nslearn/panel.hpp"

namespace nslearn {

/// Predictor matrix in observations-by-p layout together with its
/// ones-augmented form [X 1]. p = 0 (intercept-only models) is valid; the
/// augmented matrix is then just the ones column.
class DesignMatrix {
public:
  explicit DesignMatrix(Eigen::MatrixXd observations_by_p)
      : predictors_(std::move(observations_by_p)) {
    if (predictors_.rows() == 0) {
      throw EmptyInput("design matrix needs at least one observation");
    }
    if (!predictors_.allFinite()) {
      throw NonFiniteValue("design matrix contains non-finite entries");
    }
    augmented_.resize(predictors_.rows(), predictors_.cols() + 1);
    augmented_.leftCols(predictors_.cols()) = predictors_;
    augmented_.col(predictors_.cols()).setOnes();
  }

  /// Adapts a predictors-in-columns matrix (p x n, one observation per
  /// column) to the canonical observations-by-p layout.
  static DesignMatrix from_predictor_columns(const Eigen::MatrixXd& p_by_n) {
    return DesignMatrix(p_by_n.transpose());
  }

  Eigen::Index observation_count() const noexcept { return predictors_.rows(); }
  Eigen::Index predictor_count() const noexcept { return predictors_.cols(); }

  const Eigen::MatrixXd& predictors() const noexcept { return predictors_; }

  /// [X 1], observations x (p + 1).
  const Eigen::MatrixXd& augmented() const noexcept { return augmented_; }

private:
  Eigen::MatrixXd predictors_;
  Eigen::MatrixXd augmented_;
};

/// Appends the ones column to an observations-by-p predictor matrix.
inline DesignMatrix augment(Eigen::MatrixXd observations_by_p) {
  return DesignMatrix(std::move(observations_by_p));
}

/// Builds an autoregressive design from a SeriesAsRows panel: the predictor
/// matrix collects lagged copies of every series, ordered lag-major (lag 1
/// of series 1..d, then lag 2 of series 1..d, ...), so p = lags * d. The
/// returned response panel drops the first `lags` rows; its row t aligns
/// with predictor row t. lags = 0 yields an empty predictor matrix and the
/// unchanged panel.
inline std::pair<DesignMatrix, Panel> build_lag_design(const Panel& Y,
                                                       Eigen::Index lags) {
  if (Y.orientation() != Orientation::SeriesAsRows) {
    throw Error("build_lag_design: panel must be SeriesAsRows");
  }
  if (lags < 0) throw Error("build_lag_design: lags must be nonnegative");
  const Eigen::Index n = Y.rows();
  const Eigen::Index d = Y.cols();
  if (lags == 0) {
    return {DesignMatrix(Eigen::MatrixXd(n, 0)), Y};
  }
  if (n <= lags) {
    std::ostringstream what;
    what << "build_lag_design: " << n << " time steps cannot support lag order "
         << lags;
    throw TooShort(what.str());
  }
  const Eigen::Index rows = n - lags;
  Eigen::MatrixXd X(rows, lags * d);
  for (Eigen::Index lag = 1; lag <= lags; ++lag) {
    X.middleCols((lag - 1) * d, d) = Y.values().block(lags - lag, 0, rows, d);
  }
  Panel responses(Y.values().bottomRows(rows), Orientation::SeriesAsRows);
  return {DesignMatrix(std::move(X)), std::move(responses)};
}

}  // namespace nslearn

#endif  // NSLEARN_DESIGN_HPP
