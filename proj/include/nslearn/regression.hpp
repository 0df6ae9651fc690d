#ifndef NSLEARN_REGRESSION_HPP
#define NSLEARN_REGRESSION_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include <Eigen/Core>
#include <Eigen/QR>
#include <Eigen/Cholesky>

#include "nslearn/design.hpp"
#include "nslearn/errors.hpp"
#include "nslearn/functionals.hpp"
#include "nslearn/losses.hpp"
#include "nslearn/panel.hpp"

namespace nslearn {

/// Diagonal entries of the pivoted R factor below this fraction of the
/// leading entry flag the augmented design as rank deficient.
inline constexpr double kRankTolerance = 1e-10;

enum class FitMethod { Ols1d, MultiOls, NsRegression, NsExtended };

inline const char* to_string(FitMethod m) {
  switch (m) {
    case FitMethod::Ols1d: return "ols1d";
    case FitMethod::MultiOls: return "multiols";
    case FitMethod::NsRegression: return "nsreg";
    case FitMethod::NsExtended: return "nsreg-ext";
  }
  return "?";
}

/// Estimated linear model theta = [A | b] with d rows and p + 1 columns.
/// Row i holds the coefficients and intercept of response component i.
struct FitResult {
  Eigen::MatrixXd theta;
  FitMethod method = FitMethod::MultiOls;
  Orientation orientation = Orientation::SeriesAsRows;
  double condition_estimate = 0.0;
  double extended_a = 0.0;
  /// Per-observation weights used by the solve (all ones for OLS methods).
  Eigen::VectorXd weights;

  Eigen::Index response_dim() const noexcept { return theta.rows(); }
  Eigen::Index predictor_count() const noexcept { return theta.cols() - 1; }
  Eigen::MatrixXd coefficient_matrix() const {
    return theta.leftCols(predictor_count());
  }
  Eigen::VectorXd intercept() const { return theta.col(predictor_count()); }
};

namespace detail {

struct LeastSquaresSolution {
  Eigen::MatrixXd coefficients;  // (p + 1) x d
  double condition_estimate = 0.0;
};

/// Solves min ||diag(sqrt(w)) (Xaug C - T)||_F for C via a column-pivoted
/// QR of the scaled design; never forms the normal equations explicitly.
/// Columns are equilibrated to unit norm first so that the pivot-based rank
/// test and the condition estimate see the scale-free problem: predictor
/// columns may differ by many orders of magnitude (lagged series with
/// different units) without tripping the rank check.
inline LeastSquaresSolution solve_least_squares(
    const Eigen::MatrixXd& xaug, const Eigen::MatrixXd& targets,
    const Eigen::VectorXd* weights = nullptr) {
  if (xaug.rows() != targets.rows()) {
    throw ShapeMismatch("least squares: design and target row counts differ");
  }
  if (xaug.rows() < xaug.cols()) {
    std::ostringstream what;
    what << "least squares: " << xaug.rows() << " observations cannot identify "
         << xaug.cols() << " parameters";
    throw RankDeficient(what.str(),
                        std::numeric_limits<double>::infinity());
  }

  Eigen::MatrixXd scaled_design = xaug;
  Eigen::MatrixXd scaled_targets = targets;
  if (weights != nullptr) {
    const Eigen::ArrayXd root = weights->array().sqrt();
    scaled_design.array().colwise() *= root;
    scaled_targets.array().colwise() *= root;
  }

  Eigen::VectorXd column_scale(xaug.cols());
  for (Eigen::Index c = 0; c < xaug.cols(); ++c) {
    const double norm = scaled_design.col(c).norm();
    column_scale[c] = norm > 0.0 ? 1.0 / norm : 1.0;
    scaled_design.col(c) *= column_scale[c];
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled_design);
  qr.setThreshold(kRankTolerance);
  const Eigen::VectorXd r_diag =
      qr.matrixQR().diagonal().cwiseAbs().head(xaug.cols());
  const double leading = r_diag[0];
  const double trailing = r_diag[xaug.cols() - 1];
  const double condition =
      trailing > 0.0 ? leading / trailing
                     : std::numeric_limits<double>::infinity();
  if (qr.rank() < xaug.cols()) {
    std::ostringstream what;
    what << "augmented design is rank deficient (rank " << qr.rank() << " of "
         << xaug.cols() << ", condition estimate " << condition << ")";
    throw RankDeficient(what.str(), condition);
  }
  return {column_scale.asDiagonal() * qr.solve(scaled_targets), condition};
}

/// Observations-by-d view of the panel's realizations.
inline Eigen::MatrixXd realizations_as_rows(const Panel& y) {
  if (y.orientation() == Orientation::SeriesAsRows) return y.values();
  return y.values().transpose();
}

inline void require_observation_match(const DesignMatrix& x, const Panel& y,
                                      const char* where) {
  if (x.observation_count() != y.realization_count()) {
    std::ostringstream what;
    what << where << ": " << x.observation_count()
         << " design observations vs " << y.realization_count()
         << " panel realizations";
    throw ShapeMismatch(what.str());
  }
}

}  // namespace detail

/// Ordinary least squares for a scalar response. theta is 1 x (p + 1).
inline FitResult fit_ols_1d(const DesignMatrix& x, const Eigen::VectorXd& y,
                            Orientation orientation = Orientation::SeriesAsRows) {
  if (x.observation_count() != y.size()) {
    throw ShapeMismatch("fit_ols_1d: observation counts differ");
  }
  auto solution = detail::solve_least_squares(x.augmented(), y);
  FitResult fit;
  fit.theta = solution.coefficients.transpose();
  fit.method = FitMethod::Ols1d;
  fit.orientation = orientation;
  fit.condition_estimate = solution.condition_estimate;
  fit.weights = Eigen::VectorXd::Ones(x.observation_count());
  return fit;
}

/// Ordinary least squares for a d-dimensional response; equivalent to d
/// independent scalar regressions sharing one design.
inline FitResult fit_multi_ols(const DesignMatrix& x, const Panel& y) {
  detail::require_observation_match(x, y, "fit_multi_ols");
  auto solution =
      detail::solve_least_squares(x.augmented(), detail::realizations_as_rows(y));
  FitResult fit;
  fit.theta = solution.coefficients.transpose();
  fit.method = FitMethod::MultiOls;
  fit.orientation = y.orientation();
  fit.condition_estimate = solution.condition_estimate;
  fit.weights = Eigen::VectorXd::Ones(x.observation_count());
  return fit;
}

/// Nash-Sutcliffe regression: weighted least squares whose per-observation
/// weights are the (extended) Nash-Sutcliffe weights of the observed
/// realizations. Minimizes the realized (extended) Nash-Sutcliffe loss on
/// the training data. Weights are computed from y once and frozen.
inline FitResult fit_ns_regression(const DesignMatrix& x, const Panel& y,
                                   double a = 0.0) {
  detail::require_observation_match(x, y, "fit_ns_regression");
  if (y.realization_dim() < 2) {
    throw DimensionTooSmall(
        "fit_ns_regression: realization vectors must have length >= 2");
  }
  const Eigen::VectorXd weights = detail::realization_weights(y, a);
  auto solution = detail::solve_least_squares(
      x.augmented(), detail::realizations_as_rows(y), &weights);
  FitResult fit;
  fit.theta = solution.coefficients.transpose();
  fit.method = a > 0.0 ? FitMethod::NsExtended : FitMethod::NsRegression;
  fit.orientation = y.orientation();
  fit.condition_estimate = solution.condition_estimate;
  fit.extended_a = a;
  fit.weights = weights;
  return fit;
}

/// Predictions for a new design, as a panel in the fit's orientation:
/// theta Xaug^T under SeriesAsColumns, Xaug theta^T under SeriesAsRows.
inline Panel predict(const FitResult& fit, const DesignMatrix& xnew) {
  if (xnew.predictor_count() != fit.predictor_count()) {
    std::ostringstream what;
    what << "predict: design has " << xnew.predictor_count()
         << " predictors, fit expects " << fit.predictor_count();
    throw ShapeMismatch(what.str());
  }
  Eigen::MatrixXd rows = xnew.augmented() * fit.theta.transpose();
  if (fit.orientation == Orientation::SeriesAsColumns) {
    return Panel(rows.transpose(), Orientation::SeriesAsColumns);
  }
  return Panel(std::move(rows), Orientation::SeriesAsRows);
}

/// Estimates the SeriesAsRows forecasting model by minimizing the
/// column-oriented realized Nash-Sutcliffe loss. The objective separates
/// into d independent weighted least-squares problems, one per column of y,
/// whose weights are constant in the parameters; the solve therefore runs
/// per column (normal equations with the column's weight folded in) and the
/// result is checked against the multivariate OLS path, to which it must
/// agree. A constant column is not an error here: its weight cancels, so
/// the unweighted solve is used for that column.
inline FitResult fit_forecast_model_with_columnwise_ns(const DesignMatrix& x,
                                                       const Panel& y) {
  if (y.orientation() != Orientation::SeriesAsRows) {
    throw Error(
        "fit_forecast_model_with_columnwise_ns: panel must be SeriesAsRows");
  }
  detail::require_observation_match(x, y, "fit_forecast_model_with_columnwise_ns");

  FitResult reference = fit_multi_ols(x, y);

  const Eigen::MatrixXd& xaug = x.augmented();
  const Eigen::Index d = y.cols();
  const Eigen::Index params = xaug.cols();

  // Equilibrated copy of the design for the normal-equations solves.
  Eigen::MatrixXd equilibrated = xaug;
  Eigen::VectorXd column_scale(params);
  for (Eigen::Index c = 0; c < params; ++c) {
    const double norm = equilibrated.col(c).norm();
    column_scale[c] = norm > 0.0 ? 1.0 / norm : 1.0;
    equilibrated.col(c) *= column_scale[c];
  }

  Eigen::MatrixXd theta(d, params);
  for (Eigen::Index j = 0; j < d; ++j) {
    const Eigen::VectorXd column = y.values().col(j);
    const double css = centered_sum_squares(column);
    const double w = css >= kZeroVarianceFloor ? 1.0 / css : 1.0;
    const Eigen::MatrixXd normal =
        w * (equilibrated.transpose() * equilibrated);
    const Eigen::VectorXd rhs = w * (equilibrated.transpose() * column);
    theta.row(j) =
        (column_scale.asDiagonal() * normal.ldlt().solve(rhs)).transpose();
  }

  const double scale = 1.0 + reference.theta.cwiseAbs().maxCoeff();
  const double gap = (theta - reference.theta).cwiseAbs().maxCoeff();
  if (gap > 1e-9 * scale) {
    std::ostringstream what;
    what << "columnwise Nash-Sutcliffe estimate diverged from the "
            "multivariate OLS estimate (max gap "
         << gap << ")";
    throw Error(what.str());
  }

  FitResult fit;
  fit.theta = std::move(theta);
  fit.method = FitMethod::MultiOls;
  fit.orientation = Orientation::SeriesAsRows;
  fit.condition_estimate = reference.condition_estimate;
  fit.weights = Eigen::VectorXd::Ones(x.observation_count());
  return fit;
}

/// One autoregression per series on its own lagged values (lag order =
/// predictor count per series). Row s of theta holds series s's model.
inline FitResult fit_ols_per_series(const Panel& y, Eigen::Index lags) {
  if (y.orientation() != Orientation::SeriesAsRows) {
    throw Error("fit_ols_per_series: panel must be SeriesAsRows");
  }
  const Eigen::Index d = y.cols();
  Eigen::MatrixXd theta(d, lags + 1);
  double condition = 0.0;
  for (Eigen::Index s = 0; s < d; ++s) {
    Panel single(y.values().col(s), Orientation::SeriesAsRows);
    auto [design, responses] = build_lag_design(single, lags);
    FitResult fit = fit_ols_1d(design, responses.values().col(0));
    theta.row(s) = fit.theta.row(0);
    condition = std::max(condition, fit.condition_estimate);
  }
  FitResult fit;
  fit.theta = std::move(theta);
  fit.method = FitMethod::Ols1d;
  fit.orientation = Orientation::SeriesAsRows;
  fit.condition_estimate = condition;
  fit.weights = Eigen::VectorXd::Ones(y.rows() - lags);
  return fit;
}

/// Predictions of the per-series autoregressions over the panel's time
/// range; rows 0..lags-1 are consumed as initial conditions, so the result
/// has y.rows() - lags rows and aligns with build_lag_design responses.
inline Panel predict_ols_per_series(const FitResult& fit, const Panel& y) {
  if (y.orientation() != Orientation::SeriesAsRows) {
    throw Error("predict_ols_per_series: panel must be SeriesAsRows");
  }
  const Eigen::Index lags = fit.predictor_count();
  const Eigen::Index d = y.cols();
  if (fit.response_dim() != d) {
    throw ShapeMismatch("predict_ols_per_series: series count mismatch");
  }
  Eigen::MatrixXd values(y.rows() - lags, d);
  for (Eigen::Index s = 0; s < d; ++s) {
    Panel single(y.values().col(s), Orientation::SeriesAsRows);
    auto [design, responses] = build_lag_design(single, lags);
    values.col(s) = design.augmented() * fit.theta.row(s).transpose();
  }
  return Panel(std::move(values), Orientation::SeriesAsRows);
}

}  // namespace nslearn

#endif  // NSLEARN_REGRESSION_HPP
