#pragma once

#include "deltakit/decompose.hpp"
#include "deltakit/pipeline.hpp"

#include <cstdint>
#include <set>

namespace deltakit {

/// |a & b| / |a | b|; two empty sets overlap fully (1).
double jaccard(std::set<std::string> const &a, std::set<std::string> const &b);

std::set<std::string> token_set(ContributionTable const &table);

/// The two authors whose mean profiles are compared, plus how the corpus is
/// standardized before profiling.
struct PairSetup
{
  std::string author1;
  std::string author2;
  PipelineConfig pipeline; ///< mfw, z-mode, ddof, epsilon and metric
  bool restrict_to_pair = false; ///< standardize on the two authors' documents only
};

/// Standardizes, builds both author profiles and decomposes their distance.
ContributionTable pair_contributions(FrequencyMatrix const &freq, Labels const &authors, PairSetup const &setup);

struct StabilityPoint
{
  Index mfw = 0;
  double jaccard = 0;
};

struct StabilityReport
{
  MetricSpec metric;
  std::size_t top_k = 0;
  Index base_mfw = 0;
  std::vector<StabilityPoint> mfw_points; ///< mfw perturbation
  // bootstrap
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  std::vector<double> iteration_jaccard;
  double mean = 0;
  double std_dev = 0; ///< sample deviation (ddof 1); 0 for a single iteration
};

/// Top-K overlap of each perturbed mfw against `base_mfw`.
StabilityReport mfw_stability(FrequencyMatrix const &freq, Labels const &authors, PairSetup const &setup, Index base_mfw,
                              std::vector<Index> const &perturbed, std::size_t k);

/// Resamples each author's documents with replacement (same count), rebuilds
/// both profiles from the fixed z-matrix and compares top-K sets with the
/// full-data top-K. Iteration i draws from a generator seeded by (seed, i), so
/// the report does not depend on `threads`.
StabilityReport bootstrap_stability(FrequencyMatrix const &freq, Labels const &authors, PairSetup const &setup,
                                    std::size_t k, std::size_t iterations, std::uint64_t seed, unsigned threads = 1);

struct RemovalReport
{
  MetricSpec metric;
  double before = 0;
  std::vector<std::size_t> removed_k;
  std::vector<double> after;

  /// after(K) <= before and after non-increasing in K (up to rounding).
  bool monotone() const;
};

/// Zeroes the top-K contributing tokens in both profiles and recomputes the
/// distance without refitting standardization. For rtd the removed tokens are
/// dropped from the rank vectors and the remaining tokens re-ranked.
RemovalReport removal_experiment(AuthorProfile const &profile1, AuthorProfile const &profile2, Vocabulary const &vocab,
                                 MetricSpec const &metric, std::vector<std::size_t> const &k_list, double epsilon = 1e-10);

} // namespace deltakit
