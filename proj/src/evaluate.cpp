#include "deltakit/evaluate.hpp"
#include "deltakit/parallel.hpp"

#include <limits>
#include <set>

namespace deltakit {

namespace {

// Nearest-medoid distance per document.
double assignment_cost(MatrixXd const &d, std::vector<Index> const &medoids)
{
  double total = 0;
  for (Index j = 0; j < d.rows(); ++j) {
    double best = std::numeric_limits<double>::infinity();
    for (Index m : medoids) { best = std::min(best, d(j, m)); }
    total += best;
  }
  return total;
}

void check_square(MatrixXd const &d)
{
  if (d.rows() != d.cols()) { throw Error("distance matrix must be square"); }
  if (!d.allFinite()) { throw Error("distance matrix has non-finite entries"); }
}

// Dense integer codes in order of first appearance.
std::vector<Index> label_codes(Labels const &labels)
{
  std::map<std::string, Index> codes;
  std::vector<Index> out;
  for (auto const &l : labels) { out.push_back(codes.emplace(l, static_cast<Index>(codes.size())).first->second); }
  return out;
}

} // namespace

ClusteringResult pam_cluster(MatrixXd const &d, Index k)
{
  check_square(d);
  Index const n = d.rows();
  if (k < 1 || k > n) { throw Error("pam: k must lie in 1.." + std::to_string(n)); }

  // BUILD
  std::vector<Index> medoids;
  std::vector<bool> is_medoid(static_cast<std::size_t>(n), false);
  VectorXd nearest(n);
  {
    Index first = 0;
    double best = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < n; ++i) {
      double const total = d.row(i).sum();
      if (total < best) { best = total, first = i; }
    }
    medoids.push_back(first);
    is_medoid[static_cast<std::size_t>(first)] = true;
    nearest = d.col(first);
  }
  while (static_cast<Index>(medoids.size()) < k) {
    Index pick = -1;
    double best_gain = -1;
    for (Index c = 0; c < n; ++c) {
      if (is_medoid[static_cast<std::size_t>(c)]) { continue; }
      double gain = 0;
      for (Index j = 0; j < n; ++j) { gain += std::max(0.0, nearest(j) - d(j, c)); }
      if (gain > best_gain) { best_gain = gain, pick = c; }
    }
    medoids.push_back(pick);
    is_medoid[static_cast<std::size_t>(pick)] = true;
    nearest = nearest.cwiseMin(d.col(pick));
  }

  ClusteringResult result;
  result.k = k;
  double cost = assignment_cost(d, medoids);
  result.cost_trace.push_back(cost);

  // SWAP
  for (;;) {
    double best_cost = cost;
    Index best_slot = -1, best_candidate = -1;
    for (std::size_t slot = 0; slot < medoids.size(); ++slot) {
      for (Index h = 0; h < n; ++h) {
        if (is_medoid[static_cast<std::size_t>(h)]) { continue; }
        auto trial = medoids;
        trial[slot] = h;
        double const c = assignment_cost(d, trial);
        if (c < best_cost) { best_cost = c, best_slot = static_cast<Index>(slot), best_candidate = h; }
      }
    }
    if (best_slot < 0 || !(best_cost < cost - 1e-12 * std::max(1.0, std::abs(cost)))) { break; }
    is_medoid[static_cast<std::size_t>(medoids[static_cast<std::size_t>(best_slot)])] = false;
    is_medoid[static_cast<std::size_t>(best_candidate)] = true;
    medoids[static_cast<std::size_t>(best_slot)] = best_candidate;
    cost = best_cost;
    result.cost_trace.push_back(cost);
  }

  std::sort(medoids.begin(), medoids.end());
  result.medoids = medoids;
  result.labels.assign(static_cast<std::size_t>(n), 0);
  for (Index j = 0; j < n; ++j) {
    Index label = 0;
    for (std::size_t m = 0; m < medoids.size(); ++m) {
      if (medoids[m] == j) {
        label = static_cast<Index>(m);
        break;
      }
      if (d(j, medoids[m]) < d(j, medoids[static_cast<std::size_t>(label)])) { label = static_cast<Index>(m); }
    }
    result.labels[static_cast<std::size_t>(j)] = label;
  }
  result.total_cost = assignment_cost(d, medoids);
  return result;
}

ClusteringResult pam_cluster(DistanceMatrix const &d, Index k)
{
  auto result = pam_cluster(d.values, k);
  for (Index m : result.medoids) { result.medoid_ids.push_back(d.docs[static_cast<std::size_t>(m)]); }
  return result;
}

AttributionResult loocv_nearest_neighbor(MatrixXd const &d, Labels const &authors)
{
  check_square(d);
  Index const n = d.rows();
  if (n < 2) { throw Error("loocv: at least 2 documents required"); }
  if (static_cast<Index>(authors.size()) != n) { throw Error("loocv: one author label per document required"); }
  AttributionResult result{authors, Labels(authors.size()), std::vector<Index>(authors.size())};
  for (Index i = 0; i < n; ++i) {
    Index best = -1;
    for (Index j = 0; j < n; ++j) {
      if (j == i) { continue; }
      if (best < 0 || d(i, j) < d(i, best)) { best = j; }
    }
    result.neighbor[static_cast<std::size_t>(i)] = best;
    result.predicted[static_cast<std::size_t>(i)] = authors[static_cast<std::size_t>(best)];
  }
  return result;
}

AttributionResult loocv_nearest_neighbor(DistanceMatrix const &d, Labels const &authors)
{
  return loocv_nearest_neighbor(d.values, authors);
}

double balanced_accuracy(Labels const &truth, Labels const &predicted)
{
  if (truth.size() != predicted.size()) { throw Error("balanced_accuracy: length mismatch"); }
  if (truth.empty()) { throw Error("balanced_accuracy: no items"); }
  std::map<std::string, std::pair<double, double>> per_class; // hits, total
  for (std::size_t i = 0; i < truth.size(); ++i) {
    auto &entry = per_class[truth[i]];
    entry.second += 1;
    if (predicted[i] == truth[i]) { entry.first += 1; }
  }
  double sum = 0;
  for (auto const &[label, counts] : per_class) { sum += counts.first / counts.second; }
  return sum / static_cast<double>(per_class.size());
}

double score_attribution(AttributionResult const &result, SingletonPolicy policy)
{
  if (policy == SingletonPolicy::CountAsError) { return balanced_accuracy(result.truth, result.predicted); }
  std::map<std::string, int> support;
  for (auto const &a : result.truth) { ++support[a]; }
  Labels truth, predicted;
  for (std::size_t i = 0; i < result.truth.size(); ++i) {
    if (support[result.truth[i]] > 1) {
      truth.push_back(result.truth[i]);
      predicted.push_back(result.predicted[i]);
    }
  }
  if (truth.empty()) { throw Error("every author has a single document; nothing left to score"); }
  return balanced_accuracy(truth, predicted);
}

std::string to_string(Task task) { return task == Task::Cluster ? "cluster" : "attribute"; }

Task parse_task(std::string const &text)
{
  if (text == "cluster") { return Task::Cluster; }
  if (text == "attribute") { return Task::Attribute; }
  throw Error("unknown task '" + text + "' (expected cluster or attribute)");
}

PipelineConfig cell_config(SweepConfig const &config, SweepCell const &cell)
{
  PipelineConfig pc;
  pc.mfw = cell.mfw;
  pc.zmode = cell.zmode;
  pc.ddof = config.ddof;
  pc.epsilon = config.epsilon;
  pc.metric.kind = cell.metric;
  pc.metric.pi1 = config.pi1;
  pc.metric.alpha = cell.alpha.value_or(1.0);
  pc.metric.normalize_by_n = config.normalize_by_n;
  pc.metric.rtd_normalizer = config.rtd_normalizer;
  return pc;
}

double score_task(DistanceMatrix const &d, Labels const &authors, Task task, SingletonPolicy singletons)
{
  if (task == Task::Attribute) { return score_attribution(loocv_nearest_neighbor(d, authors), singletons); }
  auto const k = static_cast<Index>(std::set<std::string>(authors.begin(), authors.end()).size());
  auto const clusters = pam_cluster(d, k);
  return adjusted_rand_index(clusters.labels, label_codes(authors));
}

SweepReport sweep(FrequencyMatrix const &freq, Labels const &authors, SweepConfig const &config, unsigned threads)
{
  if (config.mfw_grid.empty() || config.metrics.empty() || config.zmodes.empty() || config.alpha_grid.empty()) {
    throw Error("sweep: every grid axis needs at least one value");
  }
  if (static_cast<Index>(authors.size()) != freq.counts.rows()) { throw Error("sweep: one author label per document required"); }

  SweepReport report{config, {}};
  for (Index mfw : config.mfw_grid) {
    for (ZMode zmode : config.zmodes) {
      for (MetricKind kind : config.metrics) {
        if (kind == MetricKind::Rtd) {
          for (double alpha : config.alpha_grid) { report.cells.push_back(SweepCell{mfw, kind, alpha, zmode, false, 0.0, {}}); }
        } else {
          report.cells.push_back(SweepCell{mfw, kind, std::nullopt, zmode, false, 0.0, {}});
        }
      }
    }
  }

  parallel_for(report.cells.size(), threads, [&](std::size_t c) {
    auto &cell = report.cells[c];
    try {
      auto const d = distance_matrix(freq, cell_config(config, cell));
      cell.score = score_task(d, authors, config.task, config.singletons);
      cell.ok = true;
    } catch (std::exception const &e) {
      cell.ok = false;
      cell.reason = e.what();
    }
  });
  return report;
}

} // namespace deltakit
