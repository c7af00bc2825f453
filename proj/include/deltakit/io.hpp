#pragma once

#include "deltakit/decompose.hpp"
#include "deltakit/evaluate.hpp"
#include "deltakit/robustness.hpp"

#include <json.hpp>

#include <iosfwd>

namespace deltakit::io {

using Json = nlohmann::ordered_json;

Json to_json(MetricSpec const &metric);
Json to_json(PipelineConfig const &config);
Json to_json(SweepConfig const &config);

/// Per-token signed bars for word-shift plots: positive bars lean to side 1,
/// negative to side 2; neutral cosine rows keep their (non-positive) delta.
Json wordshift_json(ContributionTable const &table, double total);

void write_clusters_csv(std::ostream &out, std::vector<std::string> const &docs, Labels const &authors,
                        ClusteringResult const &result);
void write_attribution_csv(std::ostream &out, std::vector<std::string> const &docs, AttributionResult const &result);

/// Long form: mfw,metric,alpha,zmode,score,task,status,reason.
void write_sweep_csv(std::ostream &out, SweepReport const &report);

/// mfw,jaccard_overlap (base row included with overlap 1).
void write_mfw_stability_csv(std::ostream &out, StabilityReport const &report);
/// metric,mean_jaccard,std_dev
void write_bootstrap_csv(std::ostream &out, StabilityReport const &report);
/// iteration,jaccard
void write_bootstrap_iterations_csv(std::ostream &out, StabilityReport const &report);
/// removed_top_k,distance_before,distance_after
void write_removal_csv(std::ostream &out, RemovalReport const &report);

/// Writes `content` to `path`, creating parent directories.
void write_text(std::string const &path, std::string const &content);
void write_json(std::string const &path, Json const &json);

} // namespace deltakit::io
