#ifndef NSLEARN_PANEL_HPP
#define NSLEARN_PANEL_HPP

#include <cmath>
#include <sstream>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "nslearn/errors.hpp"

namespace nslearn {

/// Statistical reading of a panel's value matrix.
///
/// SeriesAsColumns: a d x n matrix whose n columns are whole series of
/// length d; each column is one realization of a d-dimensional random
/// vector. SeriesAsRows: an n x d matrix whose n rows are d-dimensional
/// realizations, one per time step.
///
/// In both layouts rows index time and columns index distinct series; the
/// tag decides which axis carries the realization vectors that losses,
/// climatologies and regressions average over.
enum class Orientation { SeriesAsColumns, SeriesAsRows };

inline Orientation flip(Orientation o) {
  return o == Orientation::SeriesAsColumns ? Orientation::SeriesAsRows
                                           : Orientation::SeriesAsColumns;
}

inline const char* to_string(Orientation o) {
  return o == Orientation::SeriesAsColumns ? "columns" : "rows";
}

/// Immutable rectangular panel of finite real observations or predictions.
/// Construction rejects NaN / infinite entries; everything downstream may
/// assume finite data.
class Panel {
public:
  Panel(Eigen::MatrixXd values, Orientation orientation)
      : values_(std::move(values)), orientation_(orientation) {
    if (values_.rows() == 0 || values_.cols() == 0) {
      throw EmptyInput("panel must have at least one row and one column");
    }
    if (!values_.allFinite()) {
      std::ostringstream what;
      what << "panel contains non-finite entries at (row, col):";
      int listed = 0;
      for (Eigen::Index c = 0; c < values_.cols() && listed < 8; ++c) {
        for (Eigen::Index r = 0; r < values_.rows() && listed < 8; ++r) {
          if (!std::isfinite(values_(r, c))) {
            what << " (" << r << ", " << c << ")";
            ++listed;
          }
        }
      }
      throw NonFiniteValue(what.str());
    }
  }

  const Eigen::MatrixXd& values() const noexcept { return values_; }
  Orientation orientation() const noexcept { return orientation_; }

  Eigen::Index rows() const noexcept { return values_.rows(); }
  Eigen::Index cols() const noexcept { return values_.cols(); }

  /// Number of realization vectors (n): columns under SeriesAsColumns,
  /// rows under SeriesAsRows.
  Eigen::Index realization_count() const noexcept {
    return orientation_ == Orientation::SeriesAsColumns ? values_.cols()
                                                        : values_.rows();
  }

  /// Length d of each realization vector.
  Eigen::Index realization_dim() const noexcept {
    return orientation_ == Orientation::SeriesAsColumns ? values_.rows()
                                                        : values_.cols();
  }

  /// Realization j as a column vector (a copy).
  Eigen::VectorXd realization(Eigen::Index j) const {
    if (orientation_ == Orientation::SeriesAsColumns) return values_.col(j);
    return values_.row(j).transpose();
  }

  /// Semantic addressing: time indexes rows, series indexes columns,
  /// independent of orientation.
  double at(Eigen::Index series, Eigen::Index time) const {
    return values_(time, series);
  }

  bool same_shape(const Panel& other) const noexcept {
    return rows() == other.rows() && cols() == other.cols() &&
           orientation_ == other.orientation_;
  }

private:
  Eigen::MatrixXd values_;
  Orientation orientation_;
};

/// Mean of a nonempty vector.
inline double sample_mean(const Eigen::Ref<const Eigen::VectorXd>& v) {
  if (v.size() == 0) throw EmptyInput("sample_mean: empty vector");
  return v.sum() / static_cast<double>(v.size());
}

/// v minus its mean; the result sums to zero up to rounding.
inline Eigen::VectorXd center(const Eigen::Ref<const Eigen::VectorXd>& v) {
  if (v.size() == 0) throw EmptyInput("center: empty vector");
  return v.array() - sample_mean(v);
}

/// Transposes the value matrix and flips the orientation tag. Realization j
/// of the result is realization j of the input, so the operation is an exact
/// involution that leaves all loss and climatology semantics unchanged.
inline Panel transpose_orientation(const Panel& p) {
  return Panel(p.values().transpose(), flip(p.orientation()));
}

/// Axis selector for train/test splitting. Series always refers to the
/// column axis and Time to the row axis, matching the semantic addressing
/// of Panel::at.
enum class SplitAxis { Series, Time };

struct SplitSpec {
  Eigen::Index boundary = 0;
  SplitAxis axis = SplitAxis::Series;
};

/// Cuts the panel in two along the requested axis; the first part keeps
/// indices [0, boundary). Concatenating the parts reproduces the input and
/// both parts keep the input orientation.
inline std::pair<Panel, Panel> split(const Panel& p, const SplitSpec& spec) {
  const Eigen::Index extent =
      spec.axis == SplitAxis::Series ? p.cols() : p.rows();
  if (spec.boundary < 1 || spec.boundary >= extent) {
    std::ostringstream what;
    what << "split boundary " << spec.boundary << " outside [1, " << extent - 1
         << "] along " << (spec.axis == SplitAxis::Series ? "series" : "time")
         << " axis";
    throw InvalidSplit(what.str());
  }
  const Eigen::MatrixXd& v = p.values();
  if (spec.axis == SplitAxis::Series) {
    return {Panel(v.leftCols(spec.boundary), p.orientation()),
            Panel(v.rightCols(v.cols() - spec.boundary), p.orientation())};
  }
  return {Panel(v.topRows(spec.boundary), p.orientation()),
          Panel(v.bottomRows(v.rows() - spec.boundary), p.orientation())};
}

/// Panel whose every realization equals the given vector.
inline Panel broadcast_realizations(const Eigen::Ref<const Eigen::VectorXd>& v,
                                    Eigen::Index realization_count,
                                    Orientation orientation) {
  if (v.size() == 0) throw EmptyInput("broadcast_realizations: empty vector");
  if (realization_count < 1) {
    throw EmptyInput("broadcast_realizations: need at least one realization");
  }
  if (orientation == Orientation::SeriesAsColumns) {
    return Panel(v.replicate(1, realization_count), orientation);
  }
  return Panel(v.transpose().replicate(realization_count, 1), orientation);
}

}  // namespace nslearn

#endif  // NSLEARN_PANEL_HPP
