#pragma once

#include "deltakit/metrics.hpp"

#include <iosfwd>
#include <utility>

namespace deltakit {

/// Mean z-vector over one author's documents.
struct AuthorProfile
{
  std::string author;
  VectorXd mean_z;
  Index support = 0;
  ZMode mode = ZMode::Centred;
};

AuthorProfile author_profile(ZMatrix const &z, Labels const &authors, std::string const &author);

/// Mean of the given rows (repeats allowed, as in a bootstrap resample).
AuthorProfile rows_profile(ZMatrix const &z, std::vector<Index> const &rows, std::string label);

enum class Favored
{
  Side1,
  Side2,
  Neutral
};

std::string to_string(Favored side);

struct Contribution
{
  std::string token;
  double delta = 0;
  Favored favored = Favored::Neutral;
};

/// One row per retained token, in vocabulary order until sorted by top_k.
struct ContributionTable
{
  std::vector<Contribution> rows;
  MetricSpec metric;
  std::pair<std::string, std::string> pair;
};

/// Distance between two profiles. jsd normalizes each profile to a smoothed
/// distribution; rtd ranks each profile. Burrows honours normalize_by_n.
double profile_distance(AuthorProfile const &side1, AuthorProfile const &side2, MetricSpec const &metric,
                        double epsilon = 1e-10);

/// Per-token contributions.
///  - burrows: |z1 - z2|, favouring the side with the larger score; sums to the unnormalized L1 distance
///  - cosine: -z1 z2 on unit-scaled centred vectors; positive rows favour the side above its corpus mean,
///    rows <= 0 are neutral; 1 + sum equals the cosine delta
///  - jsd: m log(1/m) - pi1 p1 log(1/p1) - pi2 p2 log(1/p2); sums to the divergence
///  - rtd: per-token share of the normalized divergence, favouring the better (smaller) rank
/// Quadratic delta has no additive decomposition and is rejected.
ContributionTable contributions(AuthorProfile const &side1, AuthorProfile const &side2, Vocabulary const &vocab,
                                MetricSpec const &metric, double epsilon = 1e-10);

/// The k rows with largest |delta| (cosine: largest positive delta, non-positive rows
/// never selected), descending, ties by token. k larger than the table returns all.
ContributionTable top_k(ContributionTable const &table, std::size_t k);

void write_contributions_csv(std::ostream &out, ContributionTable const &table);

} // namespace deltakit
