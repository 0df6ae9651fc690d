#ifndef NSLEARN_FUNCTIONALS_HPP
#define NSLEARN_FUNCTIONALS_HPP

#include <sstream>
#include <vector>

#include <Eigen/Core>

#include "nslearn/errors.hpp"
#include "nslearn/losses.hpp"
#include "nslearn/minimize.hpp"
#include "nslearn/panel.hpp"
#include "nslearn/parallel.hpp"

namespace nslearn {

enum class ClimatologyKind {
  ComponentwiseMean,
  NashSutcliffe,
  NashSutcliffeExtended
};

/// Constant-prediction estimate of a d-dimensional functional: one entry per
/// component (time step) of a realization vector.
struct Climatology {
  Eigen::VectorXd values;
  ClimatologyKind kind = ClimatologyKind::ComponentwiseMean;
  double a = 0.0;
};

namespace detail {

/// Nash-Sutcliffe weights of every realization, extended by offset a.
/// ZeroVariance errors carry the realization index.
inline Eigen::VectorXd realization_weights(const Panel& Y, double a) {
  const Eigen::Index n = Y.realization_count();
  Eigen::VectorXd w(n);
  parallel_for(
      n,
      [&](Eigen::Index j) {
        try {
          w[j] = ns_weight_extended(Y.realization(j), a);
        } catch (const ZeroVariance& e) {
          std::ostringstream what;
          what << "realization " << j << ": " << e.what();
          throw ZeroVariance(what.str(), j);
        }
      },
      /*grain=*/256);
  return w;
}

}  // namespace detail

/// Component-wise sample mean over realizations; minimizes the realized
/// Euclidean norm loss among constant predictions.
inline Climatology componentwise_mean_climatology(const Panel& Y) {
  const Eigen::Index n = Y.realization_count();
  const Eigen::Index d = Y.realization_dim();
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(d);
  for (Eigen::Index j = 0; j < n; ++j) acc += Y.realization(j);
  return {acc / static_cast<double>(n), ClimatologyKind::ComponentwiseMean, 0.0};
}

/// Weight-averaged component-wise mean with Nash-Sutcliffe weights
/// (extended by a when a > 0); the unique minimizer of the realized
/// (extended) Nash-Sutcliffe loss among constant predictions. Weight
/// accumulation runs over ascending realization index.
inline Climatology ns_climatology(const Panel& Y, double a = 0.0) {
  const Eigen::Index n = Y.realization_count();
  const Eigen::Index d = Y.realization_dim();
  const Eigen::VectorXd w = detail::realization_weights(Y, a);
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(d);
  double total = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    acc += w[j] * Y.realization(j);
    total += w[j];
  }
  return {acc / total,
          a > 0.0 ? ClimatologyKind::NashSutcliffeExtended
                  : ClimatologyKind::NashSutcliffe,
          a};
}

/// Mean of each realization (the per-series climatology benchmark).
inline Eigen::VectorXd per_series_means(const Panel& Y) {
  const Eigen::Index n = Y.realization_count();
  Eigen::VectorXd means(n);
  for (Eigen::Index j = 0; j < n; ++j) means[j] = sample_mean(Y.realization(j));
  return means;
}

/// Benchmark panel that predicts each realization by its own mean. Its
/// realized Nash-Sutcliffe loss is exactly 1 on any non-degenerate panel.
inline Panel series_mean_predictions(const Panel& Y) {
  const Eigen::VectorXd means = per_series_means(Y);
  Eigen::MatrixXd values(Y.rows(), Y.cols());
  if (Y.orientation() == Orientation::SeriesAsColumns) {
    for (Eigen::Index j = 0; j < Y.cols(); ++j) values.col(j).setConstant(means[j]);
  } else {
    for (Eigen::Index i = 0; i < Y.rows(); ++i) values.row(i).setConstant(means[i]);
  }
  return Panel(std::move(values), Y.orientation());
}

/// Pointwise Nash-Sutcliffe identification value (z - y) w(y).
inline Eigen::VectorXd identification_ns(
    const Eigen::Ref<const Eigen::VectorXd>& z,
    const Eigen::Ref<const Eigen::VectorXd>& y, double a = 0.0) {
  if (z.size() != y.size()) {
    throw ShapeMismatch("identification_ns: vector lengths differ");
  }
  return (z - y) * ns_weight_extended(y, a);
}

enum class IdentificationKind {
  /// One-dimensional mean error pooled over every entry (length-1 result).
  Mean,
  /// Component-wise mean error, one entry per component.
  MeanComponentwise,
  /// Nash-Sutcliffe identification, residuals weighted per realization.
  NashSutcliffe
};

/// Average of the pointwise identification values over realizations. At the
/// matching climatology broadcast this is the zero vector up to rounding.
/// `a` extends the Nash-Sutcliffe weights and is ignored by the mean kinds.
inline Eigen::VectorXd empirical_identification(const Panel& Z, const Panel& Y,
                                                IdentificationKind kind,
                                                double a = 0.0) {
  detail::require_same_shape(Z, Y, "empirical_identification");
  const Eigen::Index n = Y.realization_count();
  const Eigen::Index d = Y.realization_dim();

  if (kind == IdentificationKind::Mean) {
    Eigen::VectorXd out(1);
    out[0] = (Z.values() - Y.values()).mean();
    return out;
  }

  Eigen::VectorXd acc = Eigen::VectorXd::Zero(d);
  if (kind == IdentificationKind::MeanComponentwise) {
    for (Eigen::Index j = 0; j < n; ++j) {
      acc += Z.realization(j) - Y.realization(j);
    }
  } else {
    const Eigen::VectorXd w = detail::realization_weights(Y, a);
    for (Eigen::Index j = 0; j < n; ++j) {
      acc += w[j] * (Z.realization(j) - Y.realization(j));
    }
  }
  return acc / static_cast<double>(n);
}

/// M-estimator of the constant prediction under the chosen loss, via the
/// closed forms: the component-wise mean for the Euclidean norm loss and
/// the (extended) Nash-Sutcliffe climatology otherwise.
inline Climatology m_estimate(const Panel& Y, const LossSpec& loss) {
  switch (loss.kind) {
    case LossKind::EuclideanNorm:
      return componentwise_mean_climatology(Y);
    case LossKind::NashSutcliffe:
      return ns_climatology(Y, 0.0);
    case LossKind::NashSutcliffeExtended:
      return ns_climatology(Y, loss.a);
    case LossKind::SquaredError:
      break;
  }
  throw Error("m_estimate: loss must be en, ns or ns_extended");
}

/// Realized loss of the constant prediction theta over the panel.
inline double realized_loss_constant(const Panel& Y, const LossSpec& loss,
                                     const Eigen::Ref<const Eigen::VectorXd>& theta) {
  return realized_loss(
      broadcast_realizations(theta, Y.realization_count(), Y.orientation()), Y,
      loss);
}

/// Analytic gradient of realized_loss_constant in theta:
/// (2/n) sum_j w_j (theta - y_j), with w_j = 1 for the Euclidean norm loss
/// and the (extended) Nash-Sutcliffe weight otherwise.
inline Eigen::VectorXd realized_loss_constant_gradient(
    const Panel& Y, const LossSpec& loss,
    const Eigen::Ref<const Eigen::VectorXd>& theta) {
  const Eigen::Index n = Y.realization_count();
  const Eigen::Index d = Y.realization_dim();
  if (theta.size() != d) {
    throw ShapeMismatch("realized_loss_constant_gradient: theta length != d");
  }
  Eigen::VectorXd w;
  switch (loss.kind) {
    case LossKind::EuclideanNorm:
      w = Eigen::VectorXd::Ones(n);
      break;
    case LossKind::NashSutcliffe:
      w = detail::realization_weights(Y, 0.0);
      break;
    case LossKind::NashSutcliffeExtended:
      w = detail::realization_weights(Y, loss.a);
      break;
    case LossKind::SquaredError:
      throw Error("realized_loss_constant_gradient: unsupported loss");
  }
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(d);
  for (Eigen::Index j = 0; j < n; ++j) {
    acc += w[j] * (theta - Y.realization(j));
  }
  return acc * (2.0 / static_cast<double>(n));
}

/// Numeric minimizer of the realized loss over constant predictions,
/// independent of the closed-form climatologies; exists to cross-check
/// them. Gradient descent on the strictly convex objective, stopping when
/// the sup-norm of the analytic gradient drops below tol.
inline Eigen::VectorXd numeric_minimize(const Panel& Y, const LossSpec& loss,
                                        Eigen::VectorXd start, double tol,
                                        const MinimizeOptions& base = {}) {
  MinimizeOptions options = base;
  options.tolerance = tol;
  MinimizeResult result = minimize_gradient_descent(
      [&](const Eigen::VectorXd& theta) {
        return realized_loss_constant(Y, loss, theta);
      },
      [&](const Eigen::VectorXd& theta) {
        return realized_loss_constant_gradient(Y, loss, theta);
      },
      std::move(start), options);
  return result.x;
}

}  // namespace nslearn

#endif  // NSLEARN_FUNCTIONALS_HPP
