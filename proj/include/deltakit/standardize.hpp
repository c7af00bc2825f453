#pragma once

#include "deltakit/corpus.hpp"
#include "deltakit/types.hpp"

#include <algorithm>
#include <cmath>
#include <iosfwd>
#include <numeric>

namespace deltakit {

struct RelativeFrequencies
{
  std::vector<std::string> docs;
  Vocabulary vocab;
  MatrixXd values;
};

/// Per-token mean and deviation of relative frequency, fitted over the whole
/// vocabulary. Columns with zero deviation are listed in `dropped` and left out
/// of every z-matrix built from these stats.
struct StandardizationStats
{
  Vocabulary vocab;
  VectorXd mu;
  VectorXd sigma;
  int ddof = 1;
  std::vector<Index> retained;
  Labels dropped;
};

struct ZMatrix
{
  std::vector<std::string> docs;
  Vocabulary vocab;
  MatrixXd values;
  ZMode mode = ZMode::Centred;
};

struct ProbabilityMatrix
{
  std::vector<std::string> docs;
  Vocabulary vocab;
  MatrixXd rho;
  double epsilon = 0;
};

/// Tie-averaged descending ranks: 1 marks the largest value.
template <typename Scalar> struct BasicRankVector
{
  Vector<Scalar> ranks;
  Index n_types = 0;
};
using RankVector = BasicRankVector<double>;

struct RankMatrix
{
  std::vector<std::string> docs;
  Vocabulary vocab;
  MatrixXd ranks;
  ZMode source = ZMode::Uncentred;
};

// ---------------------------------------------------------------------------
// Dense kernels

/// Divides each row by its own total. Throws if a row total is zero.
template <typename Derived, typename Scalar = double>
Matrix<Scalar> row_normalize(Eigen::MatrixBase<Derived> const &counts)
{
  Matrix<Scalar> out = counts.template cast<Scalar>();
  for (Index i = 0; i < out.rows(); ++i) {
    Scalar total = 0;
    for (Index j = 0; j < out.cols(); ++j) { total += out(i, j); }
    if (!(total > 0)) { throw Error("row " + std::to_string(i) + " has zero total over the selected vocabulary"); }
    out.row(i) /= total;
  }
  return out;
}

/// Column means and deviations, two-pass, fixed summation order.
template <typename Derived>
std::pair<Vector<typename Derived::Scalar>, Vector<typename Derived::Scalar>>
column_moments(Eigen::MatrixBase<Derived> const &x, int ddof)
{
  using Scalar = typename Derived::Scalar;
  Index const rows = x.rows();
  if (ddof != 0 && ddof != 1) { throw Error("ddof must be 0 or 1"); }
  if (rows - ddof < 1) { throw Error("not enough documents for ddof " + std::to_string(ddof)); }
  Vector<Scalar> mean(x.cols()), dev(x.cols());
  for (Index j = 0; j < x.cols(); ++j) {
    Scalar sum = 0;
    for (Index i = 0; i < rows; ++i) { sum += x(i, j); }
    mean(j) = sum / static_cast<Scalar>(rows);
    Scalar ss = 0;
    for (Index i = 0; i < rows; ++i) {
      Scalar const d = x(i, j) - mean(j);
      ss += d * d;
    }
    dev(j) = std::sqrt(ss / static_cast<Scalar>(rows - ddof));
  }
  return {mean, dev};
}

/// Average ranks of a vector, rank 1 for the largest entry.
template <typename Derived> BasicRankVector<typename Derived::Scalar> to_ranks(Eigen::MatrixBase<Derived> const &row)
{
  using Scalar = typename Derived::Scalar;
  Index const n = row.size();
  if (n == 0) { throw Error("to_ranks: empty vector"); }
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return row(a) > row(b); });

  BasicRankVector<Scalar> out{Vector<Scalar>(n), n};
  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t stop = start + 1;
    while (stop < order.size() && row(order[stop]) == row(order[start])) { ++stop; }
    // positions start..stop-1 hold ranks start+1..stop
    Scalar const avg = static_cast<Scalar>(start + 1 + stop) / Scalar(2);
    for (std::size_t k = start; k < stop; ++k) { out.ranks(order[k]) = avg; }
    start = stop;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pipeline stages

RelativeFrequencies relative_frequencies(FrequencyMatrix const &m);

/// Fits mu/sigma per token. Zero-variance tokens are dropped with a warning;
/// throws if every token is dropped.
StandardizationStats fit_stats(RelativeFrequencies const &relfreq, int ddof = 1);

/// Centred: (p - mu) / sigma. Uncentred: p / sigma. Dropped tokens are absent.
ZMatrix z_transform(RelativeFrequencies const &relfreq, StandardizationStats const &stats, ZMode mode);

/// rho = (z + epsilon) / rowsum(z + epsilon). Requires an uncentred matrix.
ProbabilityMatrix to_probability(ZMatrix const &z, double epsilon = 1e-10);

/// Row-wise average ranks.
RankMatrix to_rank_matrix(ZMatrix const &z);

/// Writes a real matrix in the frequency-CSV layout (doc id column, token header).
void write_real_csv(std::ostream &out, std::vector<std::string> const &docs, Vocabulary const &vocab, MatrixXd const &values);

} // namespace deltakit
