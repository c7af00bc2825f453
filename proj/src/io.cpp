#include "deltakit/io.hpp"
#include "deltakit/csv.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

namespace deltakit::io {

Json to_json(MetricSpec const &metric)
{
  Json j;
  j["kind"] = to_string(metric.kind);
  j["pi1"] = metric.pi1;
  j["alpha"] = metric.alpha;
  j["normalize_by_n"] = metric.normalize_by_n;
  j["rtd_normalizer"] = to_string(metric.rtd_normalizer);
  return j;
}

Json to_json(PipelineConfig const &config)
{
  Json j;
  j["metric"] = to_json(config.metric);
  j["mfw"] = config.mfw;
  j["zscore"] = to_string(config.zmode);
  j["ddof"] = config.ddof;
  j["epsilon"] = config.epsilon;
  return j;
}

Json to_json(SweepConfig const &config)
{
  Json j;
  j["task"] = to_string(config.task);
  j["mfw_grid"] = config.mfw_grid;
  Json metrics = Json::array();
  for (auto k : config.metrics) { metrics.push_back(to_string(k)); }
  j["metrics"] = metrics;
  Json zmodes = Json::array();
  for (auto z : config.zmodes) { zmodes.push_back(to_string(z)); }
  j["zscore"] = zmodes;
  j["alpha_grid"] = config.alpha_grid;
  j["ddof"] = config.ddof;
  j["epsilon"] = config.epsilon;
  j["pi1"] = config.pi1;
  j["normalize_by_n"] = config.normalize_by_n;
  j["rtd_normalizer"] = to_string(config.rtd_normalizer);
  j["singletons"] = config.singletons == SingletonPolicy::CountAsError ? "error" : "exclude";
  return j;
}

Json wordshift_json(ContributionTable const &table, double total)
{
  Json j;
  j["metric"] = to_json(table.metric);
  j["side1"] = table.pair.first;
  j["side2"] = table.pair.second;
  j["total"] = total;
  Json rows = Json::array();
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    auto const &row = table.rows[i];
    Json r;
    r["rank"] = i + 1;
    r["token"] = row.token;
    r["delta"] = row.delta;
    r["favored"] = to_string(row.favored);
    r["bar"] = row.favored == Favored::Side2 ? -row.delta : row.delta;
    rows.push_back(r);
  }
  j["tokens"] = rows;
  return j;
}

void write_clusters_csv(std::ostream &out, std::vector<std::string> const &docs, Labels const &authors,
                        ClusteringResult const &result)
{
  csv::write_row(out, {"id", "author", "cluster", "medoid", "is_medoid"});
  for (std::size_t i = 0; i < docs.size(); ++i) {
    auto const label = result.labels[i];
    auto const medoid = result.medoids[static_cast<std::size_t>(label)];
    csv::write_row(out, {docs[i], authors[i], std::to_string(label), docs[static_cast<std::size_t>(medoid)],
                         medoid == static_cast<Index>(i) ? "1" : "0"});
  }
}

void write_attribution_csv(std::ostream &out, std::vector<std::string> const &docs, AttributionResult const &result)
{
  csv::write_row(out, {"id", "author", "predicted", "nearest", "correct"});
  for (std::size_t i = 0; i < docs.size(); ++i) {
    csv::write_row(out, {docs[i], result.truth[i], result.predicted[i], docs[static_cast<std::size_t>(result.neighbor[i])],
                         result.truth[i] == result.predicted[i] ? "1" : "0"});
  }
}

void write_sweep_csv(std::ostream &out, SweepReport const &report)
{
  csv::write_row(out, {"mfw", "metric", "alpha", "zmode", "score", "task", "status", "reason"});
  for (auto const &cell : report.cells) {
    csv::write_row(out, {std::to_string(cell.mfw), to_string(cell.metric), cell.alpha ? csv::format_real(*cell.alpha) : "",
                         to_string(cell.zmode), cell.ok ? csv::format_real(cell.score) : "", to_string(report.config.task),
                         cell.ok ? "ok" : "failed", cell.reason});
  }
}

void write_mfw_stability_csv(std::ostream &out, StabilityReport const &report)
{
  csv::write_row(out, {"mfw", "jaccard_overlap", "base"});
  auto points = report.mfw_points;
  bool has_base = false;
  for (auto const &p : points) { has_base = has_base || p.mfw == report.base_mfw; }
  if (!has_base) { points.push_back({report.base_mfw, 1.0}); }
  std::stable_sort(points.begin(), points.end(), [](auto const &a, auto const &b) { return a.mfw < b.mfw; });
  for (auto const &p : points) {
    csv::write_row(out, {std::to_string(p.mfw), csv::format_real(p.jaccard), p.mfw == report.base_mfw ? "1" : "0"});
  }
}

void write_bootstrap_csv(std::ostream &out, StabilityReport const &report)
{
  csv::write_row(out, {"metric", "mean_jaccard", "std_dev", "iterations", "seed", "top_k"});
  csv::write_row(out, {to_string(report.metric.kind), csv::format_real(report.mean), csv::format_real(report.std_dev),
                       std::to_string(report.iterations), std::to_string(report.seed), std::to_string(report.top_k)});
}

void write_bootstrap_iterations_csv(std::ostream &out, StabilityReport const &report)
{
  csv::write_row(out, {"iteration", "jaccard"});
  for (std::size_t i = 0; i < report.iteration_jaccard.size(); ++i) {
    csv::write_row(out, {std::to_string(i), csv::format_real(report.iteration_jaccard[i])});
  }
}

void write_removal_csv(std::ostream &out, RemovalReport const &report)
{
  csv::write_row(out, {"removed_top_k", "distance_before", "distance_after"});
  for (std::size_t i = 0; i < report.removed_k.size(); ++i) {
    csv::write_row(out, {std::to_string(report.removed_k[i]), csv::format_real(report.before), csv::format_real(report.after[i])});
  }
}

void write_text(std::string const &path, std::string const &content)
{
  auto const parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) { std::filesystem::create_directories(parent); }
  std::ofstream out(path, std::ios::binary);
  if (!out) { throw Error("cannot write '" + path + "'"); }
  out << content;
  if (!out) { throw Error("failed writing '" + path + "'"); }
}

void write_json(std::string const &path, Json const &json) { write_text(path, json.dump(2) + "\n"); }

} // namespace deltakit::io
