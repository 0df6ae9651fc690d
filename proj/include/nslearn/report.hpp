#ifndef NSLEARN_REPORT_HPP
#define NSLEARN_REPORT_HPP

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nslearn/errors.hpp"
#include "nslearn/functionals.hpp"
#include "nslearn/losses.hpp"
#include "nslearn/panel.hpp"
#include "nslearn/regression.hpp"

namespace nslearn {

inline constexpr const char* kReportSchema = "ns-report/1";
inline constexpr const char* kFitSchema = "ns-fit/1";
inline constexpr const char* kExperimentSchema = "ns-experiment/1";
inline constexpr const char* kManifestSchema = "ns-manifest/1";

struct EvalOptions {
  std::string method = "external";
  double extended_a = 0.0;
  std::optional<std::uint64_t> seed;
  std::optional<Eigen::Index> predictor_count;
  std::string units;
};

/// Realized Euclidean norm and (extended) Nash-Sutcliffe losses of one
/// prediction panel, plus the complementary efficiency.
inline nlohmann::json metrics_block(const Panel& z, const Panel& y,
                                    double extended_a = 0.0) {
  const LossSpec ns_spec = extended_a > 0.0 ? LossSpec::ns_extended(extended_a)
                                            : LossSpec::ns();
  const double en = realized_loss(z, y, LossSpec::en());
  const double ns = realized_loss(z, y, ns_spec);
  return {{"realized_en", en},
          {"realized_ns", ns},
          {"realized_nse", 1.0 - ns}};
}

/// Full evaluation report for one prediction panel: realized losses, skill
/// against the per-series-means benchmark, and the empirical Nash-Sutcliffe
/// identification vector.
inline nlohmann::json evaluation_report(const Panel& z, const Panel& y,
                                        const EvalOptions& options = {}) {
  const LossSpec ns_spec = options.extended_a > 0.0
                               ? LossSpec::ns_extended(options.extended_a)
                               : LossSpec::ns();
  nlohmann::json report = metrics_block(z, y, options.extended_a);
  report["schema"] = kReportSchema;
  report["method"] = options.method;
  report["orientation"] = to_string(y.orientation());
  report["skill_vs_series_means"] =
      skill_score(z, y, series_mean_predictions(y), ns_spec);

  const Eigen::VectorXd identification = empirical_identification(
      z, y, IdentificationKind::NashSutcliffe, options.extended_a);
  report["identification_ns"] =
      std::vector<double>(identification.begin(), identification.end());

  nlohmann::json dims;
  dims["d"] = y.realization_dim();
  dims["n"] = y.realization_count();
  if (options.predictor_count) dims["p"] = *options.predictor_count;
  report["dims"] = dims;

  if (options.extended_a > 0.0) report["extended_a"] = options.extended_a;
  if (options.seed) report["seed"] = *options.seed;
  if (!options.units.empty()) report["units"] = options.units;
  return report;
}

inline nlohmann::json fit_to_json(const FitResult& fit, Eigen::Index lags = 0,
                                  bool per_series = false) {
  nlohmann::json doc;
  doc["schema"] = kFitSchema;
  doc["method"] = to_string(fit.method);
  doc["orientation"] = to_string(fit.orientation);
  doc["d"] = fit.response_dim();
  doc["p"] = fit.predictor_count();
  doc["condition_estimate"] = fit.condition_estimate;
  if (fit.extended_a > 0.0) doc["extended_a"] = fit.extended_a;
  if (lags > 0) doc["lags"] = lags;
  if (per_series) doc["per_series"] = true;
  std::vector<std::vector<double>> theta(static_cast<std::size_t>(fit.theta.rows()));
  for (Eigen::Index i = 0; i < fit.theta.rows(); ++i) {
    theta[static_cast<std::size_t>(i)].assign(fit.theta.row(i).begin(),
                                              fit.theta.row(i).end());
  }
  doc["theta"] = theta;
  return doc;
}

inline FitMethod fit_method_from_string(const std::string& name) {
  if (name == "ols1d") return FitMethod::Ols1d;
  if (name == "multiols") return FitMethod::MultiOls;
  if (name == "nsreg") return FitMethod::NsRegression;
  if (name == "nsreg-ext") return FitMethod::NsExtended;
  throw Error("unknown fit method: " + name);
}

inline Orientation orientation_from_string(const std::string& name) {
  if (name == "columns") return Orientation::SeriesAsColumns;
  if (name == "rows") return Orientation::SeriesAsRows;
  throw Error("unknown orientation: " + name + " (expected columns or rows)");
}

inline FitResult fit_from_json(const nlohmann::json& doc) {
  if (doc.value("schema", "") != kFitSchema) {
    throw Error("fit file schema mismatch");
  }
  FitResult fit;
  fit.method = fit_method_from_string(doc.at("method").get<std::string>());
  fit.orientation = orientation_from_string(doc.at("orientation").get<std::string>());
  fit.condition_estimate = doc.at("condition_estimate").get<double>();
  fit.extended_a = doc.value("extended_a", 0.0);
  const auto& theta = doc.at("theta");
  const Eigen::Index d = static_cast<Eigen::Index>(theta.size());
  if (d == 0) throw Error("fit file has empty theta");
  const Eigen::Index cols = static_cast<Eigen::Index>(theta.at(0).size());
  fit.theta.resize(d, cols);
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto& row = theta.at(static_cast<std::size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error("fit file theta rows have inconsistent lengths");
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      fit.theta(i, j) = row.at(static_cast<std::size_t>(j)).get<double>();
    }
  }
  return fit;
}

inline void write_json_file(const nlohmann::json& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << doc.dump(2) << '\n';
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingFile("cannot open file: " + path);
  nlohmann::json doc;
  in >> doc;
  return doc;
}

}  // namespace nslearn

#endif  // NSLEARN_REPORT_HPP
