#ifndef NSLEARN_LOSSES_HPP
#define NSLEARN_LOSSES_HPP

#include <sstream>
#include <vector>

#include <Eigen/Core>

#include "nslearn/errors.hpp"
#include "nslearn/panel.hpp"
#include "nslearn/parallel.hpp"

namespace nslearn {

/// Centered sums of squares below this floor count as zero variance; the
/// Nash-Sutcliffe weight would otherwise overflow.
inline constexpr double kZeroVarianceFloor = 1e-300;

enum class LossKind {
  SquaredError,
  EuclideanNorm,
  NashSutcliffe,
  NashSutcliffeExtended
};

/// Loss selector for realized losses and skill scores. `a` is the
/// denominator offset of the extended Nash-Sutcliffe loss and is ignored by
/// the other kinds.
struct LossSpec {
  LossKind kind = LossKind::EuclideanNorm;
  double a = 0.0;

  static LossSpec se() { return {LossKind::SquaredError, 0.0}; }
  static LossSpec en() { return {LossKind::EuclideanNorm, 0.0}; }
  static LossSpec ns() { return {LossKind::NashSutcliffe, 0.0}; }
  static LossSpec ns_extended(double a) {
    return {LossKind::NashSutcliffeExtended, a};
  }
};

inline const char* to_string(LossKind kind) {
  switch (kind) {
    case LossKind::SquaredError: return "se";
    case LossKind::EuclideanNorm: return "en";
    case LossKind::NashSutcliffe: return "ns";
    case LossKind::NashSutcliffeExtended: return "ns_extended";
  }
  return "?";
}

/// Squared error of a scalar prediction.
inline double loss_se(double z, double y) {
  const double r = z - y;
  return r * r;
}

/// Squared Euclidean distance between a prediction and a realization.
inline double loss_en(const Eigen::Ref<const Eigen::VectorXd>& z,
                      const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (z.size() != y.size()) {
    std::ostringstream what;
    what << "loss_en: prediction length " << z.size()
         << " != realization length " << y.size();
    throw ShapeMismatch(what.str());
  }
  if (z.size() == 0) throw EmptyInput("loss_en: empty vectors");
  return (z - y).squaredNorm();
}

/// Sum of squared deviations of y from its mean. All Nash-Sutcliffe
/// denominators in this library go through here, so the floating-point
/// result is identical everywhere (left-to-right accumulation over
/// ascending component index).
inline double centered_sum_squares(const Eigen::Ref<const Eigen::VectorXd>& y) {
  const double mu = sample_mean(y);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double r = mu - y[i];
    acc += r * r;
  }
  return acc;
}

/// Extended Nash-Sutcliffe weight 1 / (centered sum of squares + a).
inline double ns_weight_extended(const Eigen::Ref<const Eigen::VectorXd>& y,
                                 double a) {
  if (y.size() < 2) {
    throw DimensionTooSmall("ns_weight: realization length must be >= 2");
  }
  if (a < 0.0) throw Error("ns_weight: offset a must be nonnegative");
  const double denom = centered_sum_squares(y) + a;
  if (denom < kZeroVarianceFloor) {
    throw ZeroVariance("ns_weight: realization is (numerically) constant");
  }
  return 1.0 / denom;
}

/// Nash-Sutcliffe weight 1 / ||mu(y) 1 - y||^2. Constant realizations have
/// no weight; callers wanting robustness opt into the extended loss instead.
inline double ns_weight(const Eigen::Ref<const Eigen::VectorXd>& y) {
  return ns_weight_extended(y, 0.0);
}

/// Extended Nash-Sutcliffe loss: ||z - y||^2 / (||mu(y) 1 - y||^2 + a).
inline double loss_ns_extended(const Eigen::Ref<const Eigen::VectorXd>& z,
                               const Eigen::Ref<const Eigen::VectorXd>& y,
                               double a) {
  if (z.size() != y.size()) {
    throw ShapeMismatch("loss_ns: prediction and realization lengths differ");
  }
  return ns_weight_extended(y, a) * loss_en(z, y);
}

/// Nash-Sutcliffe loss, the data-weighted squared Euclidean distance.
/// Equals 1 when z is the realization's own mean broadcast over components.
inline double loss_ns(const Eigen::Ref<const Eigen::VectorXd>& z,
                      const Eigen::Ref<const Eigen::VectorXd>& y) {
  return loss_ns_extended(z, y, 0.0);
}

/// Nash-Sutcliffe efficiency, 1 - loss_ns. Invariant under common rescaling
/// of prediction and realization.
inline double nse(const Eigen::Ref<const Eigen::VectorXd>& z,
                  const Eigen::Ref<const Eigen::VectorXd>& y) {
  return 1.0 - loss_ns(z, y);
}

namespace detail {

/// Per-realization term of a realized loss. SquaredError uses the
/// realization's mean squared error so that panels of any width are
/// covered; for length-1 realizations it coincides with loss_se.
inline double realization_loss(const LossSpec& spec,
                               const Eigen::Ref<const Eigen::VectorXd>& z,
                               const Eigen::Ref<const Eigen::VectorXd>& y) {
  switch (spec.kind) {
    case LossKind::SquaredError:
      return loss_en(z, y) / static_cast<double>(y.size());
    case LossKind::EuclideanNorm:
      return loss_en(z, y);
    case LossKind::NashSutcliffe:
      return loss_ns(z, y);
    case LossKind::NashSutcliffeExtended:
      return loss_ns_extended(z, y, spec.a);
  }
  throw Error("realized_loss: unknown loss kind");
}

inline void require_same_shape(const Panel& Z, const Panel& Y,
                               const char* where) {
  if (!Z.same_shape(Y)) {
    std::ostringstream what;
    what << where << ": prediction panel (" << Z.rows() << "x" << Z.cols()
         << ", " << to_string(Z.orientation()) << ") does not match panel ("
         << Y.rows() << "x" << Y.cols() << ", " << to_string(Y.orientation())
         << ")";
    throw ShapeMismatch(what.str());
  }
}

}  // namespace detail

/// Mean of the pointwise loss over the panel's realizations (columns under
/// SeriesAsColumns, rows under SeriesAsRows). Terms may be computed in
/// parallel but are always reduced left to right over ascending realization
/// index, so results are run-to-run deterministic.
inline double realized_loss(const Panel& Z, const Panel& Y,
                            const LossSpec& spec) {
  detail::require_same_shape(Z, Y, "realized_loss");
  const Eigen::Index n = Y.realization_count();
  std::vector<double> terms(static_cast<std::size_t>(n));
  parallel_for(
      n,
      [&](Eigen::Index j) {
        try {
          terms[static_cast<std::size_t>(j)] = detail::realization_loss(
              spec, Z.realization(j), Y.realization(j));
        } catch (const ZeroVariance& e) {
          std::ostringstream what;
          what << "realized_loss: realization " << j << ": " << e.what();
          throw ZeroVariance(what.str(), j);
        }
      },
      /*grain=*/256);
  double acc = 0.0;
  for (double t : terms) acc += t;
  return acc / static_cast<double>(n);
}

/// 1 - realized Nash-Sutcliffe loss.
inline double realized_nse(const Panel& Z, const Panel& Y) {
  return 1.0 - realized_loss(Z, Y, LossSpec::ns());
}

/// Skill of Z against reference predictions Zref under the chosen loss:
/// 1 - realized(Z) / realized(Zref). Assumes the optimal realized loss is
/// zero; 1 means perfect predictions, 0 means no improvement over the
/// reference.
inline double skill_score(const Panel& Z, const Panel& Y, const Panel& Zref,
                          const LossSpec& spec) {
  detail::require_same_shape(Z, Y, "skill_score");
  detail::require_same_shape(Zref, Y, "skill_score (reference)");
  const double reference = realized_loss(Zref, Y, spec);
  if (reference <= 0.0) {
    throw DegenerateReference(
        "skill_score: reference predictions have zero realized loss");
  }
  return 1.0 - realized_loss(Z, Y, spec) / reference;
}

}  // namespace nslearn

#endif  // NSLEARN_LOSSES_HPP
