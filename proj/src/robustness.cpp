#include "deltakit/robustness.hpp"
#include "deltakit/parallel.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace deltakit {

double jaccard(std::set<std::string> const &a, std::set<std::string> const &b)
{
  if (a.empty() && b.empty()) { return 1.0; }
  std::size_t common = 0;
  for (auto const &t : a) { common += b.count(t); }
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

std::set<std::string> token_set(ContributionTable const &table)
{
  std::set<std::string> out;
  for (auto const &row : table.rows) { out.insert(row.token); }
  return out;
}

namespace {

std::vector<Index> rows_of(Labels const &authors, std::string const &author)
{
  std::vector<Index> rows;
  for (std::size_t i = 0; i < authors.size(); ++i) {
    if (authors[i] == author) { rows.push_back(static_cast<Index>(i)); }
  }
  if (rows.empty()) { throw Error("unknown author '" + author + "'"); }
  return rows;
}

struct PairData
{
  ZMatrix z;
  std::vector<Index> rows1;
  std::vector<Index> rows2;
};

PairData prepare(FrequencyMatrix const &freq, Labels const &authors, PairSetup const &setup)
{
  if (static_cast<Index>(authors.size()) != freq.counts.rows()) { throw Error("one author label per document required"); }
  if (setup.author1 == setup.author2) { throw Error("the two authors must differ"); }
  setup.pipeline.validate();
  auto rows1 = rows_of(authors, setup.author1);
  auto rows2 = rows_of(authors, setup.author2);
  if (!setup.restrict_to_pair) { return {standardize(freq, setup.pipeline), rows1, rows2}; }

  std::vector<Index> keep(rows1);
  keep.insert(keep.end(), rows2.begin(), rows2.end());
  auto const sub = select_documents(freq, keep);
  std::vector<Index> sub1(rows1.size()), sub2(rows2.size());
  for (std::size_t i = 0; i < sub1.size(); ++i) { sub1[i] = static_cast<Index>(i); }
  for (std::size_t i = 0; i < sub2.size(); ++i) { sub2[i] = static_cast<Index>(rows1.size() + i); }
  return {standardize(sub, setup.pipeline), sub1, sub2};
}

ContributionTable decompose_rows(PairData const &data, PairSetup const &setup, std::vector<Index> const &rows1,
                                 std::vector<Index> const &rows2)
{
  auto const p1 = rows_profile(data.z, rows1, setup.author1);
  auto const p2 = rows_profile(data.z, rows2, setup.author2);
  return contributions(p1, p2, data.z.vocab, setup.pipeline.metric, setup.pipeline.epsilon);
}

} // namespace

ContributionTable pair_contributions(FrequencyMatrix const &freq, Labels const &authors, PairSetup const &setup)
{
  auto const data = prepare(freq, authors, setup);
  return decompose_rows(data, setup, data.rows1, data.rows2);
}

StabilityReport mfw_stability(FrequencyMatrix const &freq, Labels const &authors, PairSetup const &setup, Index base_mfw,
                              std::vector<Index> const &perturbed, std::size_t k)
{
  if (k < 1) { throw Error("top-K size must be >= 1"); }
  auto const top_at = [&](Index mfw) {
    PairSetup s = setup;
    s.pipeline.mfw = mfw;
    return token_set(top_k(pair_contributions(freq, authors, s), k));
  };
  StabilityReport report;
  report.metric = setup.pipeline.metric;
  report.top_k = k;
  report.base_mfw = base_mfw;
  auto const base = top_at(base_mfw);
  for (Index mfw : perturbed) { report.mfw_points.push_back({mfw, jaccard(base, top_at(mfw))}); }
  return report;
}

StabilityReport bootstrap_stability(FrequencyMatrix const &freq, Labels const &authors, PairSetup const &setup,
                                    std::size_t k, std::size_t iterations, std::uint64_t seed, unsigned threads)
{
  if (k < 1) { throw Error("top-K size must be >= 1"); }
  if (iterations < 1) { throw Error("bootstrap needs at least one iteration"); }
  auto const data = prepare(freq, authors, setup);
  if (data.rows1.size() < 2 || data.rows2.size() < 2) { throw Error("bootstrap needs at least 2 documents per author"); }
  auto const base = token_set(top_k(decompose_rows(data, setup, data.rows1, data.rows2), k));

  StabilityReport report;
  report.metric = setup.pipeline.metric;
  report.top_k = k;
  report.base_mfw = setup.pipeline.mfw;
  report.seed = seed;
  report.iterations = iterations;
  report.iteration_jaccard.assign(iterations, 0.0);

  parallel_for(iterations, threads, [&](std::size_t it) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(it), static_cast<std::uint32_t>(std::uint64_t(it) >> 32)};
    std::mt19937_64 rng(seq);
    // modulo keeps the draw identical across standard library implementations
    auto const resample = [&](std::vector<Index> const &rows) {
      std::vector<Index> out(rows.size());
      for (auto &r : out) { r = rows[static_cast<std::size_t>(rng() % rows.size())]; }
      return out;
    };
    auto const r1 = resample(data.rows1);
    auto const r2 = resample(data.rows2);
    report.iteration_jaccard[it] = jaccard(base, token_set(top_k(decompose_rows(data, setup, r1, r2), k)));
  });

  double sum = 0;
  for (double j : report.iteration_jaccard) { sum += j; }
  report.mean = sum / static_cast<double>(iterations);
  if (iterations > 1) {
    double ss = 0;
    for (double j : report.iteration_jaccard) { ss += (j - report.mean) * (j - report.mean); }
    report.std_dev = std::sqrt(ss / static_cast<double>(iterations - 1));
  }
  return report;
}

bool RemovalReport::monotone() const
{
  double const tol = 1e-12 * std::max(1.0, std::abs(before));
  double previous = before;
  for (double a : after) {
    if (a > previous + tol) { return false; }
    previous = a;
  }
  return true;
}

RemovalReport removal_experiment(AuthorProfile const &profile1, AuthorProfile const &profile2, Vocabulary const &vocab,
                                 MetricSpec const &metric, std::vector<std::size_t> const &k_list, double epsilon)
{
  if (k_list.empty()) { throw Error("removal: K list is empty"); }
  for (std::size_t i = 0; i < k_list.size(); ++i) {
    if (k_list[i] < 1 || static_cast<Index>(k_list[i]) > vocab.size()) {
      throw Error("removal: K must lie in 1.." + std::to_string(vocab.size()));
    }
    if (i > 0 && k_list[i] <= k_list[i - 1]) { throw Error("removal: K values must be strictly increasing"); }
  }

  auto const table = contributions(profile1, profile2, vocab, metric, epsilon);
  RemovalReport report{metric, profile_distance(profile1, profile2, metric, epsilon), k_list, {}};
  std::map<std::string, Index> column;
  for (Index j = 0; j < vocab.size(); ++j) { column.emplace(vocab.tokens[static_cast<std::size_t>(j)], j); }

  for (std::size_t k : k_list) {
    std::vector<bool> removed(static_cast<std::size_t>(vocab.size()), false);
    for (auto const &row : top_k(table, k).rows) { removed[static_cast<std::size_t>(column.at(row.token))] = true; }

    AuthorProfile a = profile1, b = profile2;
    if (metric.kind == MetricKind::Rtd) {
      std::vector<Index> keep;
      for (Index j = 0; j < vocab.size(); ++j) {
        if (!removed[static_cast<std::size_t>(j)]) { keep.push_back(j); }
      }
      if (keep.empty()) {
        report.after.push_back(0.0);
        continue;
      }
      a.mean_z = profile1.mean_z(keep);
      b.mean_z = profile2.mean_z(keep);
    } else {
      for (Index j = 0; j < vocab.size(); ++j) {
        if (removed[static_cast<std::size_t>(j)]) { a.mean_z(j) = 0, b.mean_z(j) = 0; }
      }
    }
    report.after.push_back(profile_distance(a, b, metric, epsilon));
  }
  return report;
}

} // namespace deltakit
