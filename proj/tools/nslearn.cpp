// Command-line front end: CSV ingestion, lagged designs, model fitting,
// evaluation reports and the seeded simulation scenarios.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <nslearn/nslearn.hpp>

namespace {

using nlohmann::json;
using namespace nslearn;

std::string timestamp_utc() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buffer[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buffer;
}

std::string manifest_path(const std::string& out) {
  const std::string suffix = ".json";
  if (out.size() > suffix.size() &&
      out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return out.substr(0, out.size() - suffix.size()) + ".manifest.json";
  }
  return out + ".manifest.json";
}

SplitAxis observation_axis(Orientation o) {
  return o == Orientation::SeriesAsColumns ? SplitAxis::Series : SplitAxis::Time;
}

std::pair<DesignMatrix, DesignMatrix> split_design(const DesignMatrix& x,
                                                   Eigen::Index boundary) {
  const Eigen::Index n = x.observation_count();
  if (boundary < 1 || boundary >= n) {
    throw InvalidSplit("split boundary outside the design's observations");
  }
  return {DesignMatrix(x.predictors().topRows(boundary)),
          DesignMatrix(x.predictors().bottomRows(n - boundary))};
}

struct DataOptions {
  std::string path;
  std::string orientation = "rows";
  bool has_header = false;
  std::string time_column;

  Panel load() const {
    IngestSpec spec;
    spec.path = path;
    spec.orientation = orientation_from_string(orientation);
    spec.has_header = has_header;
    if (!time_column.empty()) spec.time_column = time_column;
    return ingest_csv(spec);
  }

  void attach(CLI::App* cmd, bool required = true) {
    auto* opt = cmd->add_option("--data", path, "input CSV file");
    if (required) opt->required();
    cmd->add_option("--orientation", orientation,
                    "panel orientation: columns|rows")
        ->check(CLI::IsMember({"columns", "rows"}));
    cmd->add_flag("--has-header", has_header, "first CSV row is a header");
    cmd->add_option("--time-column", time_column,
                    "header name of a time column to drop");
  }
};

struct LaggedData {
  DesignMatrix x;
  Panel y;
};

LaggedData prepare_lagged(const Panel& panel, Eigen::Index lags) {
  if (lags > 0 && panel.orientation() != Orientation::SeriesAsRows) {
    throw Error("--lags requires --orientation rows");
  }
  if (lags > 0) {
    auto [x, y] = build_lag_design(panel, lags);
    return {std::move(x), std::move(y)};
  }
  return {DesignMatrix(Eigen::MatrixXd(panel.realization_count(), 0)), panel};
}

FitResult fit_with_method(FitMethod method, const DesignMatrix& x,
                          const Panel& y, double extended_a) {
  switch (method) {
    case FitMethod::MultiOls:
      return fit_multi_ols(x, y);
    case FitMethod::NsRegression:
      return fit_ns_regression(x, y, 0.0);
    case FitMethod::NsExtended:
      if (extended_a <= 0.0) {
        throw Error("method nsreg-ext requires --extended-a > 0");
      }
      return fit_ns_regression(x, y, extended_a);
    case FitMethod::Ols1d:
      throw Error("ols1d is fitted per series; use --lags >= 1");
  }
  throw Error("unknown fit method");
}

// ---------------------------------------------------------------------------
// fit
// ---------------------------------------------------------------------------

struct FitCommand {
  DataOptions data;
  std::string method;
  Eigen::Index lags = 0;
  Eigen::Index split_boundary = 0;
  double extended_a = 0.0;
  std::string out;

  int run() const {
    const FitMethod fit_method = fit_method_from_string(method);
    const Panel panel = data.load();

    FitResult fit{};
    Panel* train_y = nullptr;
    std::optional<Panel> train_storage;
    std::optional<Panel> predictions;

    if (fit_method == FitMethod::Ols1d) {
      if (lags < 1) throw Error("ols1d needs --lags >= 1");
      if (panel.orientation() != Orientation::SeriesAsRows) {
        throw Error("ols1d needs --orientation rows");
      }
      Panel train_raw =
          split_boundary > 0
              ? split(panel, {split_boundary + lags, SplitAxis::Time}).first
              : panel;
      fit = fit_ols_per_series(train_raw, lags);
      predictions = predict_ols_per_series(fit, train_raw);
      train_storage = Panel(train_raw.values().bottomRows(train_raw.rows() - lags),
                            Orientation::SeriesAsRows);
      train_y = &*train_storage;
    } else {
      LaggedData lagged = prepare_lagged(panel, lags);
      if (split_boundary > 0) {
        auto [x_train, x_test] = split_design(lagged.x, split_boundary);
        auto [y_train, y_test] =
            split(lagged.y, {split_boundary, observation_axis(lagged.y.orientation())});
        fit = fit_with_method(fit_method, x_train, y_train, extended_a);
        predictions = predict(fit, x_train);
        train_storage = std::move(y_train);
        train_y = &*train_storage;
      } else {
        fit = fit_with_method(fit_method, lagged.x, lagged.y, extended_a);
        predictions = predict(fit, lagged.x);
        train_storage = std::move(lagged.y);
        train_y = &*train_storage;
      }
    }

    const LossSpec ns_spec = fit.extended_a > 0.0
                                 ? LossSpec::ns_extended(fit.extended_a)
                                 : LossSpec::ns();
    const double train_ns = realized_loss(*predictions, *train_y, ns_spec);
    write_json_file(fit_to_json(fit, lags, fit_method == FitMethod::Ols1d), out);
    std::cout << "method: " << to_string(fit.method) << "\n"
              << "condition_estimate: " << fit.condition_estimate << "\n"
              << "train_realized_ns: " << train_ns << "\n"
              << "fit written to " << out << "\n";
    return 0;
  }
};

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

struct EvalCommand {
  std::string obs_path;
  std::string pred_path;
  std::string fit_path;
  DataOptions data;
  std::string orientation = "rows";
  bool has_header = false;
  Eigen::Index split_boundary = 0;
  std::string part = "test";
  double extended_a = 0.0;
  std::string units;
  std::string out;

  json evaluate_panels() const {
    IngestSpec spec;
    spec.orientation = orientation_from_string(orientation);
    spec.has_header = has_header;
    spec.path = obs_path;
    const Panel y = ingest_csv(spec);
    spec.path = pred_path;
    const Panel z = ingest_csv(spec);
    EvalOptions options;
    options.method = "external";
    options.extended_a = extended_a;
    options.units = units;
    return evaluation_report(z, y, options);
  }

  json evaluate_fit() const {
    const json fit_doc = read_json_file(fit_path);
    const FitResult fit = fit_from_json(fit_doc);
    const Eigen::Index lags = fit_doc.value("lags", Eigen::Index{0});
    const bool per_series = fit_doc.value("per_series", false);

    DataOptions source = data;
    source.orientation = to_string(fit.orientation);
    const Panel panel = source.load();

    std::optional<Panel> z;
    std::optional<Panel> y;
    if (per_series) {
      Panel all_pred = predict_ols_per_series(fit, panel);
      Panel all_y = Panel(panel.values().bottomRows(panel.rows() - lags),
                          Orientation::SeriesAsRows);
      if (split_boundary > 0) {
        auto z_parts = split(all_pred, {split_boundary, SplitAxis::Time});
        auto y_parts = split(all_y, {split_boundary, SplitAxis::Time});
        z = part == "train" ? std::move(z_parts.first) : std::move(z_parts.second);
        y = part == "train" ? std::move(y_parts.first) : std::move(y_parts.second);
      } else {
        z = std::move(all_pred);
        y = std::move(all_y);
      }
    } else {
      LaggedData lagged = prepare_lagged(panel, lags);
      if (split_boundary > 0) {
        auto [x_train, x_test] = split_design(lagged.x, split_boundary);
        auto y_parts = split(
            lagged.y, {split_boundary, observation_axis(lagged.y.orientation())});
        const DesignMatrix& x = part == "train" ? x_train : x_test;
        y = part == "train" ? std::move(y_parts.first) : std::move(y_parts.second);
        z = predict(fit, x);
      } else {
        z = predict(fit, lagged.x);
        y = std::move(lagged.y);
      }
    }

    EvalOptions options;
    options.method = to_string(fit.method);
    options.extended_a = extended_a > 0.0 ? extended_a : fit.extended_a;
    options.predictor_count = fit.predictor_count();
    options.units = units;
    return evaluation_report(*z, *y, options);
  }

  int run() const {
    if (!fit_path.empty() && !data.path.empty()) {
      const json report = evaluate_fit();
      if (!out.empty()) write_json_file(report, out);
      std::cout << report.dump(2) << "\n";
      return 0;
    }
    if (!obs_path.empty() && !pred_path.empty()) {
      const json report = evaluate_panels();
      if (!out.empty()) write_json_file(report, out);
      std::cout << report.dump(2) << "\n";
      return 0;
    }
    throw Error("eval needs either --obs and --pred, or --fit and --data");
  }
};

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateCommand {
  std::string scenario;
  Eigen::Index d = 100;
  Eigen::Index n = 1000;
  Eigen::Index p = 6;
  double delta = 0.0;
  double correlation = 0.5;
  std::uint64_t seed = 0;
  std::string out;

  int run() const {
    SimConfig config;
    config.scenario = scenario_from_string(scenario);
    config.d = d;
    config.n = n;
    config.p = p;
    config.delta = delta;
    config.correlation = correlation;
    config.seed = seed;
    const SimOutput output = generate(config);

    json files;
    const std::string y_path = out + "_Y.csv";
    emit_csv_file(output.y.values(), y_path);
    files["Y"] = y_path;
    if (output.x) {
      const std::string x_path = out + "_X.csv";
      emit_csv_file(*output.x, x_path);
      files["X"] = x_path;
    }
    if (output.theta_true) {
      const std::string theta_path = out + "_theta_true.csv";
      emit_csv_file(*output.theta_true, theta_path);
      files["theta_true"] = theta_path;
    }

    json manifest;
    manifest["schema"] = kManifestSchema;
    manifest["scenario"] = scenario;
    manifest["dims"] = {{"d", d}, {"n", n}};
    if (config.scenario == Scenario::Exp2 || config.scenario == Scenario::Exp3) {
      manifest["dims"]["p"] = p;
    }
    if (config.scenario == Scenario::TruncatedMvn) {
      manifest["delta"] = delta;
      manifest["acceptance_rate"] = *output.acceptance_rate;
    }
    manifest["seed"] = seed;
    manifest["correlation"] = correlation;
    manifest["orientation"] = to_string(output.y.orientation());
    manifest["files"] = files;
    manifest["generated_at"] = timestamp_utc();
    const std::string path = out + "_manifest.json";
    write_json_file(manifest, path);
    std::cout << "wrote " << files.size() << " data file(s) and " << path << "\n";
    return 0;
  }
};

// ---------------------------------------------------------------------------
// experiment
// ---------------------------------------------------------------------------

struct ExperimentCommand {
  std::string scenario;
  DataOptions data;
  Eigen::Index d = 100;
  Eigen::Index n = 1000;
  Eigen::Index p = 6;
  double correlation = 0.5;
  std::uint64_t seed = 0;
  Eigen::Index split_boundary = 0;
  Eigen::Index lags = 0;
  double extended_a = 0.0;
  std::vector<std::string> methods;
  std::string out;

  json climatology_comparison(const Panel& y) const {
    json methods_out = json::array();
    const Climatology mean_clim = componentwise_mean_climatology(y);
    const Climatology ns_clim = ns_climatology(y);
    const Panel mean_pred = broadcast_realizations(
        mean_clim.values, y.realization_count(), y.orientation());
    const Panel ns_pred = broadcast_realizations(
        ns_clim.values, y.realization_count(), y.orientation());
    const Panel series_pred = series_mean_predictions(y);
    methods_out.push_back(
        {{"name", "mean_climatology"}, {"eval", metrics_block(mean_pred, y)}});
    methods_out.push_back(
        {{"name", "ns_climatology"}, {"eval", metrics_block(ns_pred, y)}});
    methods_out.push_back(
        {{"name", "series_means"}, {"eval", metrics_block(series_pred, y)}});
    return methods_out;
  }

  json regression_comparison(const DesignMatrix& x, const Panel& y,
                             Eigen::Index boundary,
                             const std::vector<std::string>& method_names,
                             const Panel* raw_rows_panel) const {
    auto [x_train, x_test] = split_design(x, boundary);
    auto [y_train, y_test] =
        split(y, {boundary, observation_axis(y.orientation())});

    json methods_out = json::array();
    for (const std::string& name : method_names) {
      const FitMethod method = fit_method_from_string(name);
      json entry;
      entry["name"] = name;
      if (method == FitMethod::Ols1d) {
        if (raw_rows_panel == nullptr || lags < 1) {
          throw Error("ols1d comparison needs a rows panel with --lags >= 1");
        }
        Panel train_raw =
            split(*raw_rows_panel, {boundary + lags, SplitAxis::Time}).first;
        FitResult fit = fit_ols_per_series(train_raw, lags);
        Panel all_pred = predict_ols_per_series(fit, *raw_rows_panel);
        auto pred_parts = split(all_pred, {boundary, SplitAxis::Time});
        entry["train"] = metrics_block(pred_parts.first, y_train);
        entry["test"] = metrics_block(pred_parts.second, y_test);
        entry["condition_estimate"] = fit.condition_estimate;
      } else {
        FitResult fit = fit_with_method(method, x_train, y_train, extended_a);
        entry["train"] = metrics_block(predict(fit, x_train), y_train);
        entry["test"] = metrics_block(predict(fit, x_test), y_test);
        entry["condition_estimate"] = fit.condition_estimate;
      }
      methods_out.push_back(std::move(entry));
    }
    return methods_out;
  }

  int run() const {
    json report;
    report["schema"] = kExperimentSchema;

    if (!scenario.empty()) {
      SimConfig config;
      config.scenario = scenario_from_string(scenario);
      config.d = d;
      config.n = n;
      config.p = p;
      config.correlation = correlation;
      config.seed = seed;
      const SimOutput output = generate(config);

      report["source"] = scenario;
      report["orientation"] = to_string(output.y.orientation());
      report["seed"] = seed;
      report["correlation"] = correlation;
      json dims = {{"d", d}, {"n", n}};

      if (config.scenario == Scenario::Exp2 || config.scenario == Scenario::Exp3) {
        dims["p"] = p;
        const Eigen::Index boundary = split_boundary > 0 ? split_boundary : n / 2;
        report["split"] = boundary;
        const DesignMatrix design =
            config.scenario == Scenario::Exp2
                ? DesignMatrix::from_predictor_columns(*output.x)
                : DesignMatrix(*output.x);
        std::vector<std::string> names =
            methods.empty() ? std::vector<std::string>{"multiols", "nsreg"}
                            : methods;
        report["methods"] = regression_comparison(design, output.y, boundary,
                                                  names, nullptr);
      } else if (config.scenario == Scenario::TruncatedMvn) {
        throw Error("experiment does not cover truncated-mvn; use simulate");
      } else {
        report["methods"] = climatology_comparison(output.y);
      }
      report["dims"] = dims;
    } else if (!data.path.empty()) {
      const Panel panel = data.load();
      if (panel.orientation() != Orientation::SeriesAsRows) {
        throw Error("data experiments need --orientation rows");
      }
      if (split_boundary < 1) throw Error("data experiments need --split");
      LaggedData lagged = prepare_lagged(panel, lags);

      report["source"] = data.path;
      report["orientation"] = to_string(panel.orientation());
      report["lags"] = lags;
      report["split"] = split_boundary;
      report["dims"] = {{"d", lagged.y.realization_dim()},
                        {"n", lagged.y.realization_count()},
                        {"p", lagged.x.predictor_count()}};
      std::vector<std::string> names =
          methods.empty()
              ? std::vector<std::string>{"ols1d", "multiols", "nsreg"}
              : methods;
      report["methods"] = regression_comparison(lagged.x, lagged.y,
                                                split_boundary, names, &panel);
    } else {
      throw Error("experiment needs either --scenario or --data");
    }

    if (extended_a > 0.0) report["extended_a"] = extended_a;

    write_json_file(report, out);
    json manifest;
    manifest["schema"] = kManifestSchema;
    manifest["report"] = out;
    manifest["generated_at"] = timestamp_utc();
    write_json_file(manifest, manifest_path(out));
    std::cout << report.dump(2) << "\n";
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nash-Sutcliffe loss estimation and multi-series forecast "
               "evaluation"};
  app.require_subcommand(1);

  FitCommand fit_cmd;
  auto* fit = app.add_subcommand("fit", "fit a linear model to a CSV panel");
  fit_cmd.data.attach(fit);
  fit->add_option("--method", fit_cmd.method,
                  "ols1d|multiols|nsreg|nsreg-ext")
      ->required()
      ->check(CLI::IsMember({"ols1d", "multiols", "nsreg", "nsreg-ext"}));
  fit->add_option("--lags", fit_cmd.lags, "autoregressive lag order");
  fit->add_option("--split", fit_cmd.split_boundary,
                  "train on the first N observations");
  fit->add_option("--extended-a", fit_cmd.extended_a,
                  "denominator offset of the extended NS loss");
  fit->add_option("--out", fit_cmd.out, "fit JSON output path")->required();

  EvalCommand eval_cmd;
  auto* eval = app.add_subcommand("eval", "evaluate predictions against observations");
  eval->add_option("--obs", eval_cmd.obs_path, "observations CSV");
  eval->add_option("--pred", eval_cmd.pred_path, "predictions CSV");
  eval->add_option("--orientation", eval_cmd.orientation,
                   "panel orientation for --obs/--pred: columns|rows")
      ->check(CLI::IsMember({"columns", "rows"}));
  eval->add_flag("--has-header", eval_cmd.has_header,
                 "first CSV row is a header (applies to --obs/--pred)");
  eval->add_option("--fit", eval_cmd.fit_path, "fit JSON produced by `fit`");
  eval->add_option("--data", eval_cmd.data.path, "CSV panel for --fit mode");
  eval->add_flag("--data-has-header", eval_cmd.data.has_header,
                 "first row of --data is a header");
  eval->add_option("--time-column", eval_cmd.data.time_column,
                   "header name of a time column to drop from --data");
  eval->add_option("--split", eval_cmd.split_boundary,
                   "boundary between train and test observations");
  eval->add_option("--part", eval_cmd.part, "which side of --split to evaluate")
      ->check(CLI::IsMember({"train", "test"}));
  eval->add_option("--extended-a", eval_cmd.extended_a,
                   "denominator offset of the extended NS loss");
  eval->add_option("--units", eval_cmd.units, "free-text units annotation");
  eval->add_option("--out", eval_cmd.out, "report JSON output path");

  SimulateCommand sim_cmd;
  auto* sim = app.add_subcommand("simulate", "generate a seeded scenario dataset");
  sim->add_option("--scenario", sim_cmd.scenario,
                  "exp1a|exp1b|exp1c|exp1d|exp1e|exp2|exp3|truncated-mvn")
      ->required();
  sim->add_option("--d", sim_cmd.d, "series length / realization dimension");
  sim->add_option("--n", sim_cmd.n, "number of series / realizations");
  sim->add_option("--p", sim_cmd.p, "predictor count (exp2/exp3)");
  sim->add_option("--delta", sim_cmd.delta, "truncation threshold (truncated-mvn)");
  sim->add_option("--correlation", sim_cmd.correlation,
                  "exchangeable correlation of dependent scenarios");
  sim->add_option("--seed", sim_cmd.seed, "RNG seed");
  sim->add_option("--out", sim_cmd.out, "output path prefix")->required();

  ExperimentCommand exp_cmd;
  auto* exp = app.add_subcommand(
      "experiment", "run a scenario or dataset end to end and compare methods");
  exp->add_option("--scenario", exp_cmd.scenario, "simulation scenario");
  exp_cmd.data.attach(exp, /*required=*/false);
  exp->add_option("--d", exp_cmd.d, "series length / realization dimension");
  exp->add_option("--n", exp_cmd.n, "number of series / realizations");
  exp->add_option("--p", exp_cmd.p, "predictor count (exp2/exp3)");
  exp->add_option("--correlation", exp_cmd.correlation,
                  "exchangeable correlation of dependent scenarios");
  exp->add_option("--seed", exp_cmd.seed, "RNG seed");
  exp->add_option("--split", exp_cmd.split_boundary,
                  "train/test boundary in observations");
  exp->add_option("--lags", exp_cmd.lags, "autoregressive lag order (data mode)");
  exp->add_option("--extended-a", exp_cmd.extended_a,
                  "denominator offset of the extended NS loss");
  exp->add_option("--methods", exp_cmd.methods,
                  "methods to compare (data/regression modes)")
      ->delimiter(',');
  exp->add_option("--out", exp_cmd.out, "report JSON output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*fit) return fit_cmd.run();
    if (*eval) return eval_cmd.run();
    if (*sim) return sim_cmd.run();
    if (*exp) return exp_cmd.run();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
