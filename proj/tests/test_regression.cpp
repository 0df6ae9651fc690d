#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <utility>

#include <nslearn/design.hpp>
#include <nslearn/functionals.hpp>
#include <nslearn/minimize.hpp>
#include <nslearn/regression.hpp>

#include "helpers.hpp"

using namespace nslearn;

namespace {

struct Instance {
  DesignMatrix x;
  Panel y;
};

/// Linear data with Gaussian noise; realizations are almost surely
/// non-constant.
Instance random_instance(std::mt19937& rng, Eigen::Index d, Eigen::Index n,
                         Eigen::Index p, Orientation orientation,
                         double noise = 0.25) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd predictors(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) predictors(i, j) = gauss(rng);
  }
  Eigen::MatrixXd theta(d, p + 1);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j <= p; ++j) theta(i, j) = gauss(rng);
  }
  DesignMatrix x(predictors);
  Eigen::MatrixXd rows = x.augmented() * theta.transpose();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) rows(i, j) += noise * gauss(rng);
  }
  if (orientation == Orientation::SeriesAsRows) {
    return {std::move(x), Panel(std::move(rows), orientation)};
  }
  return {std::move(x), Panel(rows.transpose(), orientation)};
}

double realized_ns_of(const FitResult& fit, const DesignMatrix& x,
                      const Panel& y) {
  return realized_loss(predict(fit, x), y, LossSpec::ns());
}

double realized_en_of(const FitResult& fit, const DesignMatrix& x,
                      const Panel& y) {
  return realized_loss(predict(fit, x), y, LossSpec::en());
}

}  // namespace

TEST_CASE("augment appends the ones column") {
  Eigen::MatrixXd x(2, 1);
  x << 0, 1;
  const DesignMatrix design = augment(x);
  CHECK(design.predictor_count() == 1);
  Eigen::MatrixXd expected(2, 2);
  expected << 0, 1,
              1, 1;
  CHECK(design.augmented() == expected);

  const DesignMatrix intercept_only = augment(Eigen::MatrixXd(3, 0));
  CHECK(intercept_only.predictor_count() == 0);
  CHECK(intercept_only.augmented() == Eigen::MatrixXd::Ones(3, 1));

  std::mt19937 rng(41);
  for (Eigen::Index p : {0, 1, 4}) {
    const DesignMatrix d(testutil::random_matrix(rng, 6, p));
    CHECK(d.augmented().cols() == p + 1);
  }
}

TEST_CASE("fit_ols_1d") {
  SECTION("two points determine the line") {
    Eigen::MatrixXd x(2, 1);
    x << 0, 1;
    Eigen::VectorXd y(2);
    y << 1, 3;
    const FitResult fit = fit_ols_1d(DesignMatrix(x), y);
    CHECK(fit.theta.rows() == 1);
    CHECK(std::abs(fit.theta(0, 0) - 2.0) <= 1e-12);
    CHECK(std::abs(fit.theta(0, 1) - 1.0) <= 1e-12);
  }

  SECTION("constant response loads the intercept only") {
    std::mt19937 rng(42);
    const DesignMatrix x(testutil::random_matrix(rng, 20, 3));
    const Eigen::VectorXd y = Eigen::VectorXd::Constant(20, 4.5);
    const FitResult fit = fit_ols_1d(x, y);
    CHECK(fit.theta.row(0).head(3).lpNorm<Eigen::Infinity>() <= 1e-12);
    CHECK(std::abs(fit.theta(0, 3) - 4.5) <= 1e-12);
  }

  SECTION("intercept-only fit is the mean") {
    std::mt19937 rng(43);
    const Eigen::VectorXd y = testutil::random_vector(rng, 15);
    const FitResult fit = fit_ols_1d(DesignMatrix(Eigen::MatrixXd(15, 0)), y);
    CHECK(std::abs(fit.theta(0, 0) - sample_mean(y)) <= 1e-14);
  }

  SECTION("residuals are orthogonal to the augmented columns") {
    std::mt19937 rng(44);
    const DesignMatrix x(testutil::random_matrix(rng, 30, 4));
    const Eigen::VectorXd y = testutil::random_vector(rng, 30, -2.0, 2.0);
    const FitResult fit = fit_ols_1d(x, y);
    const Eigen::VectorXd residual =
        y - x.augmented() * fit.theta.row(0).transpose();
    CHECK((x.augmented().transpose() * residual).lpNorm<Eigen::Infinity>() <=
          1e-8 * y.norm());
  }

  SECTION("duplicate columns are rank deficient") {
    Eigen::MatrixXd x(5, 2);
    x.col(0) = Eigen::VectorXd::LinSpaced(5, 0.0, 1.0);
    x.col(1) = x.col(0);
    CHECK_THROWS_AS(fit_ols_1d(DesignMatrix(x), Eigen::VectorXd::Zero(5)),
                    RankDeficient);
  }

  SECTION("more parameters than observations") {
    std::mt19937 rng(45);
    const DesignMatrix x(testutil::random_matrix(rng, 3, 4));
    CHECK_THROWS_AS(fit_ols_1d(x, Eigen::VectorXd::Zero(3)), RankDeficient);
  }
}

TEST_CASE("fit_multi_ols") {
  std::mt19937 rng(46);

  SECTION("noiseless data is recovered exactly") {
    const Instance inst =
        random_instance(rng, 4, 25, 3, Orientation::SeriesAsRows, 0.0);
    const FitResult fit = fit_multi_ols(inst.x, inst.y);
    CHECK(realized_en_of(fit, inst.x, inst.y) <= 1e-18);
  }

  SECTION("intercept-only reduces to the componentwise mean climatology") {
    const Panel y =
        testutil::random_panel(rng, 5, 12, Orientation::SeriesAsColumns);
    const FitResult fit =
        fit_multi_ols(DesignMatrix(Eigen::MatrixXd(12, 0)), y);
    const Eigen::VectorXd mean = componentwise_mean_climatology(y).values;
    CHECK((fit.theta.col(0) - mean).lpNorm<Eigen::Infinity>() <= 1e-13);
  }

  SECTION("rows decompose into one-dimensional fits") {
    const Instance inst =
        random_instance(rng, 6, 40, 3, Orientation::SeriesAsRows);
    const FitResult fit = fit_multi_ols(inst.x, inst.y);
    for (Eigen::Index i = 0; i < 6; ++i) {
      const FitResult single =
          fit_ols_1d(inst.x, inst.y.values().col(i));
      CHECK((fit.theta.row(i) - single.theta.row(0))
                .lpNorm<Eigen::Infinity>() <= 1e-10);
    }
  }

  SECTION("both orientations agree") {
    const Instance inst =
        random_instance(rng, 5, 30, 2, Orientation::SeriesAsRows);
    const FitResult by_rows = fit_multi_ols(inst.x, inst.y);
    const FitResult by_columns =
        fit_multi_ols(inst.x, transpose_orientation(inst.y));
    CHECK(by_rows.theta == by_columns.theta);
    CHECK(by_columns.orientation == Orientation::SeriesAsColumns);
  }
}

TEST_CASE("fit_ns_regression") {
  std::mt19937 rng(47);

  SECTION("intercept-only is the ns climatology") {
    const Panel y =
        testutil::random_panel(rng, 5, 12, Orientation::SeriesAsColumns);
    const FitResult fit =
        fit_ns_regression(DesignMatrix(Eigen::MatrixXd(12, 0)), y);
    const Eigen::VectorXd clim = ns_climatology(y).values;
    CHECK((fit.theta.col(0) - clim).lpNorm<Eigen::Infinity>() <= 1e-13);

    const FitResult extended =
        fit_ns_regression(DesignMatrix(Eigen::MatrixXd(12, 0)), y, 2.5);
    const Eigen::VectorXd clim_ext = ns_climatology(y, 2.5).values;
    CHECK((extended.theta.col(0) - clim_ext).lpNorm<Eigen::Infinity>() <=
          1e-13);
    CHECK(extended.method == FitMethod::NsExtended);
  }

  SECTION("exact interpolation matches OLS") {
    // n = p + 1 and full rank: both estimators interpolate.
    const Instance inst =
        random_instance(rng, 3, 4, 3, Orientation::SeriesAsRows);
    const FitResult ns = fit_ns_regression(inst.x, inst.y);
    const FitResult ols = fit_multi_ols(inst.x, inst.y);
    const double scale = 1.0 + ols.theta.cwiseAbs().maxCoeff();
    CHECK((ns.theta - ols.theta).cwiseAbs().maxCoeff() <= 1e-8 * scale);
    CHECK(realized_en_of(ns, inst.x, inst.y) <= 1e-16 * scale);
  }

  SECTION("weighted residual moment vanishes") {
    const Instance inst =
        random_instance(rng, 4, 30, 3, Orientation::SeriesAsRows);
    const FitResult fit = fit_ns_regression(inst.x, inst.y);
    const Eigen::MatrixXd residual =
        inst.x.augmented() * fit.theta.transpose() - inst.y.values();
    const Eigen::MatrixXd moment = inst.x.augmented().transpose() *
                                   fit.weights.asDiagonal() * residual;
    CHECK(moment.cwiseAbs().maxCoeff() <=
          1e-8 * (1.0 + inst.y.values().cwiseAbs().maxCoeff()));
  }

  SECTION("constant training realization is an error unless extended") {
    // Under SeriesAsRows the realizations are rows; row 2 is constant.
    Eigen::MatrixXd values(4, 2);
    values << 1, 7,
              2, 5,
              4, 4,
              3, 6;
    values.row(2).setConstant(4.0);
    const Panel y(values, Orientation::SeriesAsRows);
    Eigen::MatrixXd x = testutil::random_matrix(rng, 4, 1);
    try {
      fit_ns_regression(DesignMatrix(x), y);
      FAIL("expected ZeroVariance");
    } catch (const ZeroVariance& e) {
      CHECK(e.series() == 2);
    }
    CHECK_NOTHROW(fit_ns_regression(DesignMatrix(x), y, 0.5));
  }

  SECTION("realization dimension below two is rejected") {
    const Panel y(Eigen::MatrixXd::Random(6, 1).eval(),
                  Orientation::SeriesAsRows);
    CHECK_THROWS_AS(
        fit_ns_regression(DesignMatrix(Eigen::MatrixXd(6, 0)), y),
        DimensionTooSmall);
  }

  SECTION("predictor columns of wildly different scales stay full rank") {
    // Lagged series can differ by many orders of magnitude; the rank test
    // must see the equilibrated problem, and the weighted solve must still
    // recover an exact linear relationship.
    std::mt19937 scales_rng(58);
    const Eigen::Index n = 30, p = 4, d = 3;
    Eigen::MatrixXd predictors = testutil::random_matrix(scales_rng, n, p);
    const double column_scales[] = {1e-9, 1.0, 1e6, 1e12};
    for (Eigen::Index j = 0; j < p; ++j) predictors.col(j) *= column_scales[j];
    Eigen::MatrixXd theta = testutil::random_matrix(scales_rng, d, p + 1);
    for (Eigen::Index j = 0; j < p; ++j) theta.col(j) /= column_scales[j];
    const DesignMatrix x(predictors);
    const Panel y(Eigen::MatrixXd(x.augmented() * theta.transpose()),
                  Orientation::SeriesAsRows);
    const FitResult ns = fit_ns_regression(x, y);
    const FitResult ols = fit_multi_ols(x, y);
    CHECK(realized_loss(predict(ns, x), y, LossSpec::en()) <= 1e-10);
    CHECK(realized_loss(predict(ols, x), y, LossSpec::en()) <= 1e-10);
  }
}

TEST_CASE("predict") {
  Eigen::MatrixXd theta(1, 2);
  theta << 2, 1;
  FitResult fit;
  fit.theta = theta;
  fit.method = FitMethod::Ols1d;
  fit.orientation = Orientation::SeriesAsRows;
  fit.weights = Eigen::VectorXd::Ones(1);

  Eigen::MatrixXd xnew(1, 1);
  xnew << 0.5;
  const Panel z = predict(fit, DesignMatrix(xnew));
  CHECK(z.values()(0, 0) == 2.0);

  std::mt19937 rng(48);
  const Panel y = testutil::random_panel(rng, 4, 9, Orientation::SeriesAsColumns);
  const DesignMatrix intercept_only(Eigen::MatrixXd(9, 0));
  const FitResult clim_fit = fit_multi_ols(intercept_only, y);
  const Panel broadcast = predict(clim_fit, DesignMatrix(Eigen::MatrixXd(3, 0)));
  CHECK(broadcast.cols() == 3);
  for (Eigen::Index j = 0; j < 3; ++j) {
    CHECK(broadcast.realization(j) == clim_fit.theta.col(0));
  }

  CHECK_THROWS_AS(predict(clim_fit, DesignMatrix(Eigen::MatrixXd::Zero(3, 2))),
                  ShapeMismatch);
}

TEST_CASE("columnwise NS estimation recovers multivariate OLS") {
  std::mt19937 rng(49);

  SECTION("random instances") {
    for (int trial = 0; trial < 100; ++trial) {
      const Instance inst = random_instance(rng, 2 + trial % 5, 12 + trial % 20,
                                            1 + trial % 3,
                                            Orientation::SeriesAsRows);
      const FitResult columnwise =
          fit_forecast_model_with_columnwise_ns(inst.x, inst.y);
      const FitResult ols = fit_multi_ols(inst.x, inst.y);
      const double scale = 1.0 + ols.theta.cwiseAbs().maxCoeff();
      CHECK((columnwise.theta - ols.theta).cwiseAbs().maxCoeff() <=
            1e-9 * scale);
    }
  }

  SECTION("intercept-only gives per-column means") {
    const Panel y =
        testutil::random_panel(rng, 5, 11, Orientation::SeriesAsRows);
    const FitResult fit = fit_forecast_model_with_columnwise_ns(
        DesignMatrix(Eigen::MatrixXd(11, 0)), y);
    const Eigen::VectorXd mean = componentwise_mean_climatology(y).values;
    CHECK((fit.theta.col(0) - mean).lpNorm<Eigen::Infinity>() <= 1e-12);
  }

  SECTION("exactly linear data is interpolated") {
    const Instance inst =
        random_instance(rng, 2, 18, 2, Orientation::SeriesAsRows, 0.0);
    const FitResult fit =
        fit_forecast_model_with_columnwise_ns(inst.x, inst.y);
    CHECK(realized_en_of(fit, inst.x, inst.y) <= 1e-16);
  }

  SECTION("a constant column is tolerated") {
    Eigen::MatrixXd values = testutil::random_matrix(rng, 10, 3);
    values.col(1).setConstant(4.0);
    const Panel y(values, Orientation::SeriesAsRows);
    const DesignMatrix x(testutil::random_matrix(rng, 10, 2));
    CHECK_NOTHROW(fit_forecast_model_with_columnwise_ns(x, y));
  }

  SECTION("columns orientation is rejected") {
    const Panel y =
        testutil::random_panel(rng, 3, 8, Orientation::SeriesAsColumns);
    CHECK_THROWS_AS(fit_forecast_model_with_columnwise_ns(
                        DesignMatrix(Eigen::MatrixXd(8, 0)), y),
                    Error);
  }
}

TEST_CASE("each estimator wins its own training criterion") {
  std::mt19937 rng(50);
  for (int trial = 0; trial < 100; ++trial) {
    const Orientation orientation = trial % 2 == 0
                                        ? Orientation::SeriesAsColumns
                                        : Orientation::SeriesAsRows;
    const Instance inst = random_instance(rng, 2 + trial % 6, 10 + trial % 30,
                                          1 + trial % 4, orientation, 0.5);
    const FitResult ols = fit_multi_ols(inst.x, inst.y);
    const FitResult ns = fit_ns_regression(inst.x, inst.y);

    const double en_ols = realized_en_of(ols, inst.x, inst.y);
    const double en_ns = realized_en_of(ns, inst.x, inst.y);
    const double ns_ols = realized_ns_of(ols, inst.x, inst.y);
    const double ns_ns = realized_ns_of(ns, inst.x, inst.y);

    CHECK(en_ols <= en_ns + 1e-12 * (1.0 + en_ns));
    CHECK(ns_ns <= ns_ols + 1e-12 * (1.0 + ns_ols));
  }
}

TEST_CASE("single-entry perturbations never improve the training criterion") {
  std::mt19937 rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = random_instance(rng, 2 + trial % 4, 12 + trial % 16,
                                          1 + trial % 3,
                                          Orientation::SeriesAsRows, 0.4);
    const FitResult ols = fit_multi_ols(inst.x, inst.y);
    const FitResult ns = fit_ns_regression(inst.x, inst.y);
    const double en_at_ols = realized_en_of(ols, inst.x, inst.y);
    const double ns_at_ns = realized_ns_of(ns, inst.x, inst.y);

    for (Eigen::Index i = 0; i < ols.theta.rows(); ++i) {
      for (Eigen::Index j = 0; j < ols.theta.cols(); ++j) {
        for (double delta : {-1e-3, 1e-3}) {
          FitResult probe_ols = ols;
          probe_ols.theta(i, j) += delta;
          CHECK(realized_en_of(probe_ols, inst.x, inst.y) >=
                en_at_ols - 1e-12 * (1.0 + en_at_ols));

          FitResult probe_ns = ns;
          probe_ns.theta(i, j) += delta;
          CHECK(realized_ns_of(probe_ns, inst.x, inst.y) >=
                ns_at_ns - 1e-12 * (1.0 + ns_at_ns));
        }
      }
    }
  }
}

TEST_CASE("uniform weights collapse NS regression onto OLS") {
  // Rows are permutations of one base vector: equal centered sums of
  // squares, hence a weight matrix proportional to the identity.
  std::mt19937 rng(52);
  Eigen::VectorXd base = testutil::random_vector(rng, 7, 0.0, 3.0);
  Eigen::MatrixXd values(16, 7);
  std::vector<double> shuffled(base.begin(), base.end());
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      values(i, j) = shuffled[static_cast<std::size_t>(j)];
    }
  }
  const Panel y(values, Orientation::SeriesAsRows);
  const DesignMatrix x(testutil::random_matrix(rng, 16, 3));
  const FitResult ns = fit_ns_regression(x, y);
  const FitResult ols = fit_multi_ols(x, y);
  const double scale = 1.0 + ols.theta.cwiseAbs().maxCoeff();
  CHECK((ns.theta - ols.theta).cwiseAbs().maxCoeff() <= 1e-9 * scale);
}

TEST_CASE("NS regression matches numeric minimization") {
  std::mt19937 rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    const Instance inst =
        random_instance(rng, 5, 40, 3, Orientation::SeriesAsColumns, 0.6);
    const FitResult closed = fit_ns_regression(inst.x, inst.y);

    const Eigen::Index d = inst.y.realization_dim();
    const Eigen::Index params = inst.x.predictor_count() + 1;
    const Eigen::MatrixXd xaug = inst.x.augmented();
    const Eigen::Index n = xaug.rows();
    Eigen::VectorXd weights(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      weights[j] = ns_weight(inst.y.realization(j));
    }

    const auto unpack = [&](const Eigen::VectorXd& flat) {
      return Eigen::Map<const Eigen::MatrixXd>(flat.data(), d, params).eval();
    };
    const auto objective = [&](const Eigen::VectorXd& flat) {
      const Eigen::MatrixXd theta = unpack(flat);
      double acc = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::VectorXd r =
            theta * xaug.row(j).transpose() - inst.y.realization(j);
        acc += weights[j] * r.squaredNorm();
      }
      return acc / static_cast<double>(n);
    };
    const auto gradient = [&](const Eigen::VectorXd& flat) {
      const Eigen::MatrixXd theta = unpack(flat);
      Eigen::MatrixXd g = Eigen::MatrixXd::Zero(d, params);
      for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::VectorXd r =
            theta * xaug.row(j).transpose() - inst.y.realization(j);
        g += weights[j] * r * xaug.row(j);
      }
      g *= 2.0 / static_cast<double>(n);
      return Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(g.data(), d * params));
    };

    const MinimizeResult numeric = minimize_gradient_descent(
        objective, gradient, Eigen::VectorXd::Zero(d * params),
        {1e-10, 500000});
    const Eigen::MatrixXd numeric_theta = unpack(numeric.x);
    CHECK((closed.theta - numeric_theta).cwiseAbs().maxCoeff() <= 1e-6);
  }
}

TEST_CASE("build_lag_design") {
  SECTION("lag arithmetic of the streamflow setting") {
    std::mt19937 rng(54);
    const Panel y =
        testutil::random_panel(rng, 10, 7305, Orientation::SeriesAsRows);
    const auto [x, responses] = build_lag_design(y, 2);
    CHECK(x.predictor_count() == 20);
    CHECK(x.observation_count() == 7303);
    CHECK(responses.rows() == 7303);
  }

  SECTION("zero lags pass the panel through") {
    std::mt19937 rng(55);
    const Panel y = testutil::random_panel(rng, 3, 9, Orientation::SeriesAsRows);
    const auto [x, responses] = build_lag_design(y, 0);
    CHECK(x.predictor_count() == 0);
    CHECK(responses.values() == y.values());
  }

  SECTION("single series by hand") {
    Eigen::MatrixXd values(3, 1);
    values << 1, 2, 3;
    const Panel y(values, Orientation::SeriesAsRows);
    const auto [x, responses] = build_lag_design(y, 1);
    Eigen::MatrixXd expected_x(2, 1);
    expected_x << 1, 2;
    Eigen::MatrixXd expected_y(2, 1);
    expected_y << 2, 3;
    CHECK(x.predictors() == expected_x);
    CHECK(responses.values() == expected_y);
  }

  SECTION("lag-major column ordering") {
    Eigen::MatrixXd values(4, 2);
    values << 1, 10,
              2, 20,
              3, 30,
              4, 40;
    const Panel y(values, Orientation::SeriesAsRows);
    const auto [x, responses] = build_lag_design(y, 2);
    Eigen::MatrixXd expected(2, 4);
    // lag 1 of both series, then lag 2 of both series
    expected << 2, 20, 1, 10,
                3, 30, 2, 20;
    CHECK(x.predictors() == expected);
    CHECK(responses.values() == values.bottomRows(2));
  }

  SECTION("too short") {
    Eigen::MatrixXd values(2, 1);
    values << 1, 2;
    const Panel y(values, Orientation::SeriesAsRows);
    CHECK_THROWS_AS(build_lag_design(y, 2), TooShort);
    CHECK_THROWS_AS(build_lag_design(y, 5), TooShort);
  }
}

TEST_CASE("per-series autoregressions") {
  SECTION("exact AR(1) series are recovered") {
    // y_t = 0.5 y_{t-1} + 1 per series, different starts.
    Eigen::MatrixXd values(10, 2);
    values(0, 0) = 4.0;
    values(0, 1) = -2.0;
    for (Eigen::Index t = 1; t < 10; ++t) {
      values(t, 0) = 0.5 * values(t - 1, 0) + 1.0;
      values(t, 1) = 0.5 * values(t - 1, 1) + 1.0;
    }
    const Panel y(values, Orientation::SeriesAsRows);
    const FitResult fit = fit_ols_per_series(y, 1);
    CHECK(fit.theta.rows() == 2);
    CHECK(std::abs(fit.theta(0, 0) - 0.5) <= 1e-10);
    CHECK(std::abs(fit.theta(0, 1) - 1.0) <= 1e-10);
    CHECK(std::abs(fit.theta(1, 0) - 0.5) <= 1e-10);

    const Panel predictions = predict_ols_per_series(fit, y);
    CHECK(predictions.rows() == 9);
    CHECK((predictions.values() - values.bottomRows(9))
              .cwiseAbs()
              .maxCoeff() <= 1e-10);
  }

  SECTION("per-series fits ignore the other series") {
    std::mt19937 rng(56);
    const Panel y = testutil::random_panel(rng, 3, 40, Orientation::SeriesAsRows);
    const FitResult fit = fit_ols_per_series(y, 2);
    // Series 1 fitted alone gives the same row.
    const Panel single(y.values().col(1), Orientation::SeriesAsRows);
    const FitResult alone = fit_ols_per_series(single, 2);
    CHECK(fit.theta.row(1) == alone.theta.row(0));
  }
}
