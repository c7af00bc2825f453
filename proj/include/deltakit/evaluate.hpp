#pragma once

#include "deltakit/metrics.hpp"
#include "deltakit/pipeline.hpp"

#include <map>
#include <optional>

namespace deltakit {

// ---------------------------------------------------------------------------
// Clustering

struct ClusteringResult
{
  Index k = 0;
  std::vector<Index> medoids; ///< document indices, ascending
  std::vector<std::string> medoid_ids;
  std::vector<Index> labels; ///< per document, index into medoids
  double total_cost = 0;
  std::vector<double> cost_trace; ///< cost after BUILD, then after each accepted swap
};

/// k-medoids with greedy BUILD and steepest-descent SWAP. Ties go to the
/// smallest document index. Deterministic.
ClusteringResult pam_cluster(MatrixXd const &d, Index k);
ClusteringResult pam_cluster(DistanceMatrix const &d, Index k);

/// Pair-counting adjusted Rand index. Returns 1 when both partitions are
/// trivial in the same way (all one cluster, or all singletons).
template <typename Label> double adjusted_rand_index(std::vector<Label> const &a, std::vector<Label> const &b)
{
  if (a.size() != b.size()) { throw Error("adjusted_rand_index: length mismatch"); }
  if (a.size() < 2) { throw Error("adjusted_rand_index: need at least 2 items"); }
  std::map<Label, double> rows, cols;
  std::map<std::pair<Label, Label>, double> cells;
  for (std::size_t i = 0; i < a.size(); ++i) {
    rows[a[i]] += 1;
    cols[b[i]] += 1;
    cells[{a[i], b[i]}] += 1;
  }
  auto const pairs = [](double n) { return n * (n - 1) / 2; };
  double index = 0, sum_a = 0, sum_b = 0;
  for (auto const &[key, n] : cells) { index += pairs(n); }
  for (auto const &[key, n] : rows) { sum_a += pairs(n); }
  for (auto const &[key, n] : cols) { sum_b += pairs(n); }
  // scaled by 2 * total pairs so every term stays an exact integer
  double const total = pairs(static_cast<double>(a.size()));
  double const num = 2 * (index * total - sum_a * sum_b);
  double const den = (sum_a + sum_b) * total - 2 * sum_a * sum_b;
  if (den == 0) { return 1.0; }
  return num / den;
}

// ---------------------------------------------------------------------------
// Attribution

struct AttributionResult
{
  Labels truth;
  Labels predicted;
  std::vector<Index> neighbor; ///< index of the nearest other document
};

/// Leave-one-out 1-NN: document i takes the author of argmin_{j != i} d(i, j),
/// ties to the smallest j.
AttributionResult loocv_nearest_neighbor(MatrixXd const &d, Labels const &authors);
AttributionResult loocv_nearest_neighbor(DistanceMatrix const &d, Labels const &authors);

/// Mean per-class recall over the classes present in `truth`.
double balanced_accuracy(Labels const &truth, Labels const &predicted);

enum class SingletonPolicy
{
  CountAsError, ///< a sole-work author's document stays in the score (and is necessarily wrong)
  Exclude       ///< such documents are left out of the score
};

double score_attribution(AttributionResult const &result, SingletonPolicy policy = SingletonPolicy::CountAsError);

// ---------------------------------------------------------------------------
// Sweeps

enum class Task
{
  Cluster,  ///< PAM with k = number of authors, scored by ARI
  Attribute ///< LOOCV 1-NN, scored by balanced accuracy
};

std::string to_string(Task task);
Task parse_task(std::string const &text);

struct SweepConfig
{
  std::vector<Index> mfw_grid;
  std::vector<MetricKind> metrics;
  std::vector<ZMode> zmodes{ZMode::Centred, ZMode::Uncentred};
  std::vector<double> alpha_grid{1.0}; ///< applies to rtd only
  Task task = Task::Cluster;
  int ddof = 1;
  double epsilon = 1e-10;
  double pi1 = 0.5;
  bool normalize_by_n = true;
  RtdNormalizerMode rtd_normalizer = RtdNormalizerMode::Literal;
  SingletonPolicy singletons = SingletonPolicy::CountAsError;
};

struct SweepCell
{
  Index mfw = 0;
  MetricKind metric = MetricKind::Burrows;
  std::optional<double> alpha;
  ZMode zmode = ZMode::Centred;
  bool ok = false;
  double score = 0;
  std::string reason; ///< set when !ok
};

struct SweepReport
{
  SweepConfig config;
  std::vector<SweepCell> cells; ///< ordered by (mfw, zmode, metric, alpha) grid position
};

/// Pipeline configuration of one grid cell.
PipelineConfig cell_config(SweepConfig const &config, SweepCell const &cell);

/// Score of one distance matrix under the sweep's task.
double score_task(DistanceMatrix const &d, Labels const &authors, Task task,
                  SingletonPolicy singletons = SingletonPolicy::CountAsError);

/// Runs every grid cell. A failing cell is recorded with its reason and the
/// sweep continues.
SweepReport sweep(FrequencyMatrix const &freq, Labels const &authors, SweepConfig const &config, unsigned threads = 1);

} // namespace deltakit
