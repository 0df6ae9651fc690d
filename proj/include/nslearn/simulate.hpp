#ifndef NSLEARN_SIMULATE_HPP
#define NSLEARN_SIMULATE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "nslearn/errors.hpp"
#include "nslearn/losses.hpp"
#include "nslearn/panel.hpp"
#include "nslearn/rng.hpp"

namespace nslearn {

/// Sub-stream ids per generation stage (see derive_stream_seed). Scenarios
/// sharing a stage reuse the stream, e.g. exp1a and exp1c consume the same
/// noise variates and differ only through the mean draw.
namespace stream {
inline constexpr std::uint64_t kMeanDraw = 0;
inline constexpr std::uint64_t kNoiseDraw = 1;
inline constexpr std::uint64_t kErrorDraw = 2;
inline constexpr std::uint64_t kPredictorDraw = 3;
inline constexpr std::uint64_t kCoefficientDraw = 4;
inline constexpr std::uint64_t kProposalDraw = 5;
}  // namespace stream

enum class Scenario {
  Exp1a,
  Exp1b,
  Exp1c,
  Exp1d,
  Exp1e,
  Exp2,
  Exp3,
  TruncatedMvn
};

inline const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::Exp1a: return "exp1a";
    case Scenario::Exp1b: return "exp1b";
    case Scenario::Exp1c: return "exp1c";
    case Scenario::Exp1d: return "exp1d";
    case Scenario::Exp1e: return "exp1e";
    case Scenario::Exp2: return "exp2";
    case Scenario::Exp3: return "exp3";
    case Scenario::TruncatedMvn: return "truncated-mvn";
  }
  return "?";
}

inline Scenario scenario_from_string(const std::string& name) {
  if (name == "exp1a") return Scenario::Exp1a;
  if (name == "exp1b") return Scenario::Exp1b;
  if (name == "exp1c") return Scenario::Exp1c;
  if (name == "exp1d") return Scenario::Exp1d;
  if (name == "exp1e") return Scenario::Exp1e;
  if (name == "exp2") return Scenario::Exp2;
  if (name == "exp3") return Scenario::Exp3;
  if (name == "truncated-mvn") return Scenario::TruncatedMvn;
  throw Error("unknown scenario: " + name);
}

/// Scenario parameters. Defaults follow the simulation studies this module
/// reproduces: 1000 series of length 100, and 6 predictors for the
/// regression scenarios. The lag-one correlation of the dependent
/// scenarios is configurable (0.5 by default).
struct SimConfig {
  Scenario scenario = Scenario::Exp1a;
  Eigen::Index d = 100;
  Eigen::Index n = 1000;
  Eigen::Index p = 6;
  double delta = 0.0;
  double correlation = 0.5;
  std::uint64_t seed = 0;
  bool zero_noise = false;
};

struct SimOutput {
  Panel y;
  std::optional<Eigen::MatrixXd> x;           // p x n (exp2) or n x p (exp3)
  std::optional<Eigen::MatrixXd> theta_true;  // d x (p + 1), [A | b]
  std::optional<double> acceptance_rate;      // truncated sampler only
};

namespace detail {

/// Square root factor A with A A^T = Sigma, via a symmetric eigendecomposition.
/// Works for any positive semidefinite Sigma (including singular ones);
/// throws InvalidCovariance otherwise.
inline Eigen::MatrixXd covariance_factor(const Eigen::MatrixXd& sigma) {
  if (sigma.rows() != sigma.cols()) {
    throw InvalidCovariance("covariance matrix must be square");
  }
  if (!sigma.isApprox(sigma.transpose(), 1e-12)) {
    throw InvalidCovariance("covariance matrix must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma);
  if (eig.info() != Eigen::Success) {
    throw InvalidCovariance("covariance eigendecomposition failed");
  }
  Eigen::VectorXd values = eig.eigenvalues();
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  if (values.minCoeff() < -1e-10 * scale) {
    throw InvalidCovariance("covariance matrix is not positive semidefinite");
  }
  values = values.cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * values.asDiagonal();
}

/// Lag-decaying covariance: variance * rho^|i - j|. Components index time
/// steps, so adjacent steps correlate most strongly and there is no global
/// common factor; positive definite for |rho| < 1.
inline Eigen::MatrixXd ar1_covariance(Eigen::Index d, double variance,
                                      double rho) {
  Eigen::MatrixXd sigma(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      sigma(i, j) = variance * std::pow(rho, std::abs(i - j));
    }
  }
  return sigma;
}

}  // namespace detail

/// `count` independent d-variate Gaussian draws, one per column. The
/// factor-transform of standard normals keeps zero covariance exact:
/// Sigma = 0 returns mu in every column.
inline Eigen::MatrixXd sample_mvn(const Eigen::VectorXd& mu,
                                  const Eigen::MatrixXd& sigma,
                                  Eigen::Index count, std::uint64_t seed) {
  if (mu.size() != sigma.rows()) {
    throw ShapeMismatch("sample_mvn: mean and covariance sizes differ");
  }
  const Eigen::MatrixXd factor = detail::covariance_factor(sigma);
  NormalSampler normal(seed);
  Eigen::MatrixXd draws = factor * normal.matrix(mu.size(), count);
  draws.colwise() += mu;
  return draws;
}

/// Climatology simulation scenarios: d x n SeriesAsColumns panels.
///   exp1a: N(1, 4 I) noise, then the whole matrix is shifted so its global
///          sample mean is exactly 1.
///   exp1b: exp1a exponentiated element-wise, then rescaled to overall mean 1.
///   exp1c: component means drawn from N(1, 1), independent noise of
///          variance 4 (same noise stream as exp1a).
///   exp1d: as exp1c with lag-decaying correlation rho^|i-j| across
///          components, scaled to variance 4.
///   exp1e: exp1d exponentiated element-wise, then rescaled to overall mean 1.
inline SimOutput generate_exp1(Scenario scenario, Eigen::Index d,
                               Eigen::Index n, std::uint64_t seed,
                               double correlation = 0.5) {
  if (d < 2 || n < 2) {
    throw DimensionTooSmall("generate_exp1: need d >= 2 and n >= 2");
  }
  NormalSampler mean_draw(derive_stream_seed(seed, stream::kMeanDraw));
  NormalSampler noise_draw(derive_stream_seed(seed, stream::kNoiseDraw));

  const bool constant_mean =
      scenario == Scenario::Exp1a || scenario == Scenario::Exp1b;
  const bool dependent =
      scenario == Scenario::Exp1d || scenario == Scenario::Exp1e;
  const bool lognormal =
      scenario == Scenario::Exp1b || scenario == Scenario::Exp1e;

  Eigen::VectorXd mu = Eigen::VectorXd::Ones(d);
  if (!constant_mean) mu += mean_draw.vector(d);

  Eigen::MatrixXd values;
  if (dependent) {
    const Eigen::MatrixXd factor = detail::covariance_factor(
        detail::ar1_covariance(d, 4.0, correlation));
    values = factor * noise_draw.matrix(d, n);
  } else {
    values = 2.0 * noise_draw.matrix(d, n);
  }
  values.colwise() += mu;

  if (constant_mean) {
    values.array() += 1.0 - values.mean();
  }
  if (lognormal) {
    values = values.array().exp();
    values /= values.mean();
  }
  return {Panel(std::move(values), Orientation::SeriesAsColumns),
          std::nullopt, std::nullopt, std::nullopt};
}

/// Regression scenarios. exp2 builds Y = A X + b 1^T + E with log-normal
/// errors exp(eps), eps ~ N(mu_eps, Sigma_eps), mu_eps ~ N(0, 36 I),
/// Sigma_eps lag-decaying with variance 4; coefficients a_ij ~ N(0, 0.5)
/// and intercepts b_i ~ N(1, 4) (second parameter read as a variance).
/// exp3 is the same draw reported in the transposed n x d orientation.
/// zero_noise drops E for noiseless identification checks.
inline SimOutput generate_exp_regression(Scenario scenario, Eigen::Index d,
                                         Eigen::Index n, Eigen::Index p,
                                         std::uint64_t seed,
                                         double correlation = 0.5,
                                         bool zero_noise = false) {
  if (scenario != Scenario::Exp2 && scenario != Scenario::Exp3) {
    throw Error("generate_exp_regression: scenario must be exp2 or exp3");
  }
  if (d < 2 || n < p + 2) {
    throw DimensionTooSmall("generate_exp_regression: need d >= 2, n >= p + 2");
  }
  NormalSampler mean_draw(derive_stream_seed(seed, stream::kMeanDraw));
  NormalSampler error_draw(derive_stream_seed(seed, stream::kErrorDraw));
  NormalSampler predictor_draw(derive_stream_seed(seed, stream::kPredictorDraw));
  NormalSampler coefficient_draw(
      derive_stream_seed(seed, stream::kCoefficientDraw));

  const Eigen::MatrixXd x = predictor_draw.matrix(p, n);
  const Eigen::MatrixXd a =
      std::sqrt(0.5) * coefficient_draw.matrix(d, p);
  const Eigen::VectorXd b =
      Eigen::VectorXd::Ones(d) + 2.0 * coefficient_draw.vector(d);

  Eigen::MatrixXd values = a * x;
  values.colwise() += b;
  if (!zero_noise) {
    const Eigen::VectorXd mu_eps = 6.0 * mean_draw.vector(d);
    const Eigen::MatrixXd factor = detail::covariance_factor(
        detail::ar1_covariance(d, 4.0, correlation));
    Eigen::MatrixXd eps = factor * error_draw.matrix(d, n);
    eps.colwise() += mu_eps;
    values += eps.array().exp().matrix();
  }

  Eigen::MatrixXd theta(d, p + 1);
  theta.leftCols(p) = a;
  theta.col(p) = b;

  if (scenario == Scenario::Exp2) {
    return {Panel(std::move(values), Orientation::SeriesAsColumns), x,
            std::move(theta), std::nullopt};
  }
  return {Panel(values.transpose(), Orientation::SeriesAsRows),
          Eigen::MatrixXd(x.transpose()), std::move(theta), std::nullopt};
}

struct TruncatedMvnOptions {
  Eigen::Index batch = 4096;
  double acceptance_floor = 1e-4;
  Eigen::Index max_proposals = 100000000;
};

/// Rejection sampler for the multivariate normal truncated to
/// ||mu(y) 1 - y||^2 >= delta, the region where the Nash-Sutcliffe weight
/// is bounded by 1/delta. Reports the observed acceptance rate; aborts if
/// the rate after the first batch falls below the configured floor.
inline SimOutput sample_truncated_mvn(const Eigen::VectorXd& mu,
                                      const Eigen::MatrixXd& sigma,
                                      double delta, Eigen::Index count,
                                      std::uint64_t seed,
                                      const TruncatedMvnOptions& options = {}) {
  if (delta < 0.0) throw Error("sample_truncated_mvn: delta must be >= 0");
  if (count < 1) throw EmptyInput("sample_truncated_mvn: count must be >= 1");
  const Eigen::Index d = mu.size();
  const Eigen::MatrixXd factor = detail::covariance_factor(sigma);
  NormalSampler normal(derive_stream_seed(seed, stream::kProposalDraw));

  Eigen::MatrixXd accepted(d, count);
  Eigen::Index taken = 0;
  Eigen::Index inspected = 0;
  while (taken < count) {
    const Eigen::Index batch = std::min<Eigen::Index>(
        options.batch, options.max_proposals - inspected);
    if (batch <= 0) {
      throw RejectionTooAggressive(
          "sample_truncated_mvn: proposal budget exhausted");
    }
    Eigen::MatrixXd draws = factor * normal.matrix(d, batch);
    draws.colwise() += mu;
    for (Eigen::Index j = 0; j < batch && taken < count; ++j) {
      ++inspected;
      if (centered_sum_squares(draws.col(j)) >= delta) {
        accepted.col(taken++) = draws.col(j);
      }
    }
    const double rate =
        static_cast<double>(taken) / static_cast<double>(inspected);
    if (inspected >= options.batch && rate < options.acceptance_floor) {
      std::ostringstream what;
      what << "sample_truncated_mvn: acceptance rate " << rate
           << " below floor " << options.acceptance_floor << " after "
           << inspected << " proposals";
      throw RejectionTooAggressive(what.str());
    }
  }
  SimOutput out{Panel(std::move(accepted), Orientation::SeriesAsColumns),
                std::nullopt, std::nullopt,
                static_cast<double>(count) / static_cast<double>(inspected)};
  return out;
}

/// Monte Carlo check of the component-wise covariance between a draw and
/// its Nash-Sutcliffe weight.
struct UncorrelatednessReport {
  Eigen::VectorXd covariance;  // per component
  Eigen::VectorXd z;           // covariance / standard error
  Eigen::Index d = 0;
  Eigen::Index n = 0;

  double max_abs_z() const { return z.cwiseAbs().maxCoeff(); }
};

/// Estimates cov(y_k, w(y)) per component under IID N(mu, sigma2) draws of
/// dimension d (d > 3 keeps E[w] finite) and reports a z-statistic per
/// component. With `lognormal` the draws are exponentiated first, which
/// couples the components to the weight and should break the zero
/// covariance.
inline UncorrelatednessReport check_c3_uncorrelatedness(
    Eigen::Index d, Eigen::Index n, std::uint64_t seed, double mu = 1.0,
    double sigma2 = 4.0, bool lognormal = false) {
  if (d <= 3) {
    throw DimensionTooSmall("check_c3_uncorrelatedness: requires d > 3");
  }
  if (n < 16) throw EmptyInput("check_c3_uncorrelatedness: n too small");
  NormalSampler normal(derive_stream_seed(seed, stream::kNoiseDraw));
  const double sd = std::sqrt(sigma2);

  Eigen::MatrixXd draws(d, n);
  Eigen::VectorXd weights(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXd y = mu * Eigen::VectorXd::Ones(d) + sd * normal.vector(d);
    if (lognormal) y = y.array().exp();
    draws.col(j) = y;
    weights[j] = ns_weight(y);
  }

  const double w_bar = weights.mean();
  UncorrelatednessReport report;
  report.covariance.resize(d);
  report.z.resize(d);
  report.d = d;
  report.n = n;
  for (Eigen::Index k = 0; k < d; ++k) {
    const double y_bar = draws.row(k).mean();
    double sum = 0.0;
    double sum_sq = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double term = (draws(k, j) - y_bar) * (weights[j] - w_bar);
      sum += term;
      sum_sq += term * term;
    }
    const double mean_term = sum / static_cast<double>(n);
    const double var_term =
        sum_sq / static_cast<double>(n) - mean_term * mean_term;
    const double se = std::sqrt(var_term / static_cast<double>(n));
    report.covariance[k] = mean_term;
    report.z[k] = se > 0.0 ? mean_term / se : 0.0;
  }
  return report;
}

/// Scenario dispatch used by the command-line front end.
inline SimOutput generate(const SimConfig& config) {
  switch (config.scenario) {
    case Scenario::Exp1a:
    case Scenario::Exp1b:
    case Scenario::Exp1c:
    case Scenario::Exp1d:
    case Scenario::Exp1e:
      return generate_exp1(config.scenario, config.d, config.n, config.seed,
                           config.correlation);
    case Scenario::Exp2:
    case Scenario::Exp3:
      return generate_exp_regression(config.scenario, config.d, config.n,
                                     config.p, config.seed, config.correlation,
                                     config.zero_noise);
    case Scenario::TruncatedMvn:
      return sample_truncated_mvn(
          Eigen::VectorXd::Ones(config.d),
          detail::ar1_covariance(config.d, 4.0, 0.0), config.delta,
          config.n, config.seed);
  }
  throw Error("generate: unknown scenario");
}

}  // namespace nslearn

#endif  // NSLEARN_SIMULATE_HPP
