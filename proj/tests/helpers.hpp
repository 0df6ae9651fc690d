#ifndef NSLEARN_TESTS_HELPERS_HPP
#define NSLEARN_TESTS_HELPERS_HPP

#include <random>

#include <Eigen/Core>

#include <nslearn/panel.hpp>

namespace testutil {

/// Uniform(lo, hi) matrix from a caller-owned engine.
inline Eigen::MatrixXd random_matrix(std::mt19937& rng, Eigen::Index rows,
                                     Eigen::Index cols, double lo = -1.0,
                                     double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = dist(rng);
  }
  return m;
}

inline Eigen::VectorXd random_vector(std::mt19937& rng, Eigen::Index size,
                                     double lo = -1.0, double hi = 1.0) {
  return random_matrix(rng, size, 1, lo, hi).col(0);
}

/// Panel of continuous uniform draws; realizations are almost surely
/// non-constant, so Nash-Sutcliffe weights exist.
inline nslearn::Panel random_panel(std::mt19937& rng, Eigen::Index d,
                                   Eigen::Index n,
                                   nslearn::Orientation orientation,
                                   double lo = -1.0, double hi = 1.0) {
  if (orientation == nslearn::Orientation::SeriesAsColumns) {
    return nslearn::Panel(random_matrix(rng, d, n, lo, hi), orientation);
  }
  return nslearn::Panel(random_matrix(rng, n, d, lo, hi), orientation);
}

}  // namespace testutil

#endif  // NSLEARN_TESTS_HELPERS_HPP
