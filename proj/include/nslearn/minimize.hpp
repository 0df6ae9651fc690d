#ifndef NSLEARN_MINIMIZE_HPP
#define NSLEARN_MINIMIZE_HPP

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/Core>

#include "nslearn/errors.hpp"

namespace nslearn {

struct MinimizeOptions {
  /// Convergence when the sup-norm of the gradient drops below this.
  double tolerance = 1e-8;
  int max_iterations = 50000;
};

struct MinimizeResult {
  Eigen::VectorXd x;
  double objective = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
};

/// Gradient-based minimizer for smooth, strictly convex objectives:
/// conjugate gradient directions (Polak-Ribiere, restarted) with a secant
/// line search. The directional curvature comes from a finite difference of
/// gradients, so the step is the exact 1-D minimizer on quadratics and the
/// method inherits conjugate-gradient convergence there; an Armijo-style
/// backtracking pass guards the step on anything else. Throws NoConvergence
/// (carrying the last iterate) when the iteration cap is reached.
template <class Objective, class Gradient>
MinimizeResult minimize_gradient_descent(Objective&& objective,
                                         Gradient&& gradient,
                                         Eigen::VectorXd start,
                                         const MinimizeOptions& options = {}) {
  Eigen::VectorXd x = std::move(start);
  double fx = objective(x);
  Eigen::VectorXd grad = gradient(x);
  Eigen::VectorXd direction = -grad;
  const Eigen::Index dim = x.size();
  int since_restart = 0;

  for (int it = 0; it <= options.max_iterations; ++it) {
    const double gnorm = grad.lpNorm<Eigen::Infinity>();
    if (gnorm < options.tolerance) return {std::move(x), fx, gnorm, it};

    double slope = grad.dot(direction);
    if (slope >= 0.0) {  // not a descent direction: restart on the gradient
      direction = -grad;
      slope = grad.dot(direction);
      since_restart = 0;
    }

    // Secant estimate of the curvature along the direction.
    const double dnorm = direction.norm();
    const double h = 1e-7 * (1.0 + x.norm()) / dnorm;
    const Eigen::VectorXd grad_ahead = gradient(x + h * direction);
    const double curvature = (grad_ahead - grad).dot(direction) / h;

    double step = curvature > 0.0 ? -slope / curvature : 1.0 / dnorm;
    Eigen::VectorXd candidate = x + step * direction;
    double fc = objective(candidate);
    int backtracks = 0;
    while (fc > fx + 1e-4 * step * slope && backtracks < 80) {
      step *= 0.5;
      candidate = x + step * direction;
      fc = objective(candidate);
      ++backtracks;
    }
    if (backtracks == 80 && fc > fx) {
      throw NoConvergence("minimize_gradient_descent: line search stalled",
                          std::move(x));
    }

    const Eigen::VectorXd grad_next = gradient(candidate);
    const double beta =
        std::max(0.0, grad_next.dot(grad_next - grad) / grad.squaredNorm());
    x = std::move(candidate);
    fx = fc;
    grad = grad_next;
    ++since_restart;
    if (since_restart >= dim || beta == 0.0) {
      direction = -grad;
      since_restart = 0;
    } else {
      direction = -grad + beta * direction;
    }
  }
  throw NoConvergence("minimize_gradient_descent: iteration cap reached",
                      std::move(x));
}

}  // namespace nslearn

#endif  // NSLEARN_MINIMIZE_HPP
