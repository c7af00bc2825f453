#pragma once

#include "deltakit/standardize.hpp"
#include "deltakit/types.hpp"

#include <cmath>
#include <string>
#include <variant>

namespace deltakit {

enum class MetricKind
{
  Burrows,   ///< L1 over z-scores
  Quadratic, ///< L2 over z-scores
  Cosine,    ///< 1 - cosine similarity of centred z-vectors
  Jsd,       ///< Jensen-Shannon divergence of normalized uncentred z-vectors, bits
  Rtd        ///< rank-turbulence divergence of z-vector ranks
};

/// Reference rank used for the normalizer's exclusive-type terms.
enum class RtdNormalizerMode
{
  Literal,  ///< N1 - 0.5 N2
  Exclusive ///< N1 + 0.5 N2
};

struct MetricSpec
{
  MetricKind kind = MetricKind::Burrows;
  double pi1 = 0.5;
  double alpha = 1.0;
  bool normalize_by_n = true;
  RtdNormalizerMode rtd_normalizer = RtdNormalizerMode::Literal;

  void validate() const;
};

std::string to_string(MetricKind kind);
MetricKind parse_metric_kind(std::string const &text);
std::string to_string(RtdNormalizerMode mode);
RtdNormalizerMode parse_rtd_normalizer(std::string const &text);

struct RtdNormalizer
{
  double value = 0;
  double alpha = 0;
  Index n1 = 0;
  Index n2 = 0;
};

// ---------------------------------------------------------------------------
// Scalar kernels on a pair of rows

/// order 1: sum |a - b| (divided by n when normalize_by_n); order 2: Euclidean norm.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar lp_delta(Eigen::MatrixBase<DerivedA> const &a,
                                   Eigen::MatrixBase<DerivedB> const &b,
                                   int order,
                                   bool normalize_by_n = false)
{
  using Scalar = typename DerivedA::Scalar;
  if (a.size() != b.size()) { throw Error("lp_delta: length mismatch"); }
  if (order != 1 && order != 2) { throw Error("lp_delta: order must be 1 or 2"); }
  Scalar sum = 0;
  for (Index i = 0; i < a.size(); ++i) {
    Scalar const d = a(i) - b(i);
    sum += order == 1 ? std::abs(d) : d * d;
  }
  if (order == 2) { return std::sqrt(sum); }
  return normalize_by_n && a.size() > 0 ? sum / static_cast<Scalar>(a.size()) : sum;
}

/// 1 - <a/|a|, b/|b|>, in [0, 2].
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar cosine_delta(Eigen::MatrixBase<DerivedA> const &a, Eigen::MatrixBase<DerivedB> const &b)
{
  using Scalar = typename DerivedA::Scalar;
  if (a.size() != b.size()) { throw Error("cosine_delta: length mismatch"); }
  Scalar const na = a.norm();
  Scalar const nb = b.norm();
  if (!(na > 0) || !(nb > 0)) { throw Error("cosine_delta: zero-magnitude vector"); }
  Scalar dot = 0;
  for (Index i = 0; i < a.size(); ++i) { dot += (a(i) / na) * (b(i) / nb); }
  return std::clamp(Scalar(1) - dot, Scalar(0), Scalar(2));
}

namespace detail {

template <typename Derived> void check_distribution(Eigen::MatrixBase<Derived> const &p, char const *what)
{
  using Scalar = typename Derived::Scalar;
  Scalar sum = 0;
  for (Index i = 0; i < p.size(); ++i) {
    if (!(p(i) > 0)) { throw Error(std::string(what) + ": probabilities must be strictly positive (use epsilon > 0)"); }
    sum += p(i);
  }
  if (std::abs(sum - Scalar(1)) > Scalar(1e-9)) { throw Error(std::string(what) + ": row does not sum to 1"); }
}

template <typename Scalar> Scalar surprisal_term(Scalar p) { return -p * std::log2(p); }

} // namespace detail

/// H(M) - pi1 H(P1) - pi2 H(P2) in bits, with M = pi1 P1 + pi2 P2.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar jensen_shannon_delta(Eigen::MatrixBase<DerivedA> const &p1,
                                               Eigen::MatrixBase<DerivedB> const &p2,
                                               double pi1 = 0.5)
{
  using Scalar = typename DerivedA::Scalar;
  if (p1.size() != p2.size()) { throw Error("jensen_shannon_delta: length mismatch"); }
  if (!(pi1 > 0 && pi1 < 1)) { throw Error("jensen_shannon_delta: pi1 must lie in (0, 1)"); }
  detail::check_distribution(p1, "jensen_shannon_delta");
  detail::check_distribution(p2, "jensen_shannon_delta");
  Scalar const w1 = static_cast<Scalar>(pi1);
  Scalar const w2 = Scalar(1) - w1;
  Scalar h_mix = 0, h1 = 0, h2 = 0;
  for (Index i = 0; i < p1.size(); ++i) {
    h_mix += detail::surprisal_term(w1 * p1(i) + w2 * p2(i));
    h1 += detail::surprisal_term(Scalar(p1(i)));
    h2 += detail::surprisal_term(Scalar(p2(i)));
  }
  return std::max(Scalar(0), h_mix - w1 * h1 - w2 * h2);
}

namespace detail {

template <typename Scalar> Scalar rtd_term(Scalar r1, Scalar r2, Scalar alpha)
{
  return std::pow(std::abs(std::pow(r1, -alpha) - std::pow(r2, -alpha)), Scalar(1) / (alpha + Scalar(1)));
}

} // namespace detail

/// Normalization constant of the rank-turbulence divergence for two rank
/// vectors over n1 and n2 types.
template <typename Scalar>
RtdNormalizer rtd_normalizer(Index n1, Index n2, BasicRankVector<Scalar> const &r1, BasicRankVector<Scalar> const &r2,
                             double alpha, RtdNormalizerMode mode = RtdNormalizerMode::Literal)
{
  if (!(alpha > 0)) { throw Error("rtd: alpha must be > 0"); }
  Scalar const a = static_cast<Scalar>(alpha);
  Scalar const half = Scalar(0.5);
  Scalar const sign = mode == RtdNormalizerMode::Literal ? Scalar(-1) : Scalar(1);
  Scalar const ref1 = static_cast<Scalar>(n1) + sign * half * static_cast<Scalar>(n2);
  Scalar const ref2 = static_cast<Scalar>(n2) + sign * half * static_cast<Scalar>(n1);
  if (!(ref1 > 0) || !(ref2 > 0)) { throw Error("rtd: N1 - 0.5 N2 must be positive"); }
  Scalar const factor = (a + 1) / a;
  Scalar s1 = 0, s2 = 0;
  for (Index i = 0; i < r1.ranks.size(); ++i) { s1 += detail::rtd_term(Scalar(r1.ranks(i)), ref1, a); }
  for (Index i = 0; i < r2.ranks.size(); ++i) { s2 += detail::rtd_term(ref2, Scalar(r2.ranks(i)), a); }
  Scalar const value = factor * s1 + factor * s2;
  if (!(value > 0)) { throw Error("rtd: degenerate normalizer"); }
  return {static_cast<double>(value), alpha, n1, n2};
}

/// Per-token terms ((a+1)/a) |r1^-a - r2^-a|^(1/(a+1)) / N; they sum to the divergence.
template <typename Scalar>
Vector<Scalar> rank_turbulence_terms(BasicRankVector<Scalar> const &r1, BasicRankVector<Scalar> const &r2, double alpha,
                                     RtdNormalizerMode mode = RtdNormalizerMode::Literal)
{
  if (r1.ranks.size() != r2.ranks.size()) { throw Error("rtd: rank vectors cover different token domains"); }
  auto const norm = rtd_normalizer(r1.n_types, r2.n_types, r1, r2, alpha, mode);
  Scalar const a = static_cast<Scalar>(alpha);
  Scalar const scale = ((a + 1) / a) / static_cast<Scalar>(norm.value);
  Vector<Scalar> out(r1.ranks.size());
  for (Index i = 0; i < out.size(); ++i) { out(i) = scale * detail::rtd_term(Scalar(r1.ranks(i)), Scalar(r2.ranks(i)), a); }
  return out;
}

template <typename Scalar>
Scalar rank_turbulence_delta(BasicRankVector<Scalar> const &r1, BasicRankVector<Scalar> const &r2, double alpha,
                             RtdNormalizerMode mode = RtdNormalizerMode::Literal)
{
  if (r1.ranks.size() != r2.ranks.size()) { throw Error("rtd: rank vectors cover different token domains"); }
  auto const norm = rtd_normalizer(r1.n_types, r2.n_types, r1, r2, alpha, mode);
  Scalar const a = static_cast<Scalar>(alpha);
  Scalar numerator = 0;
  for (Index i = 0; i < r1.ranks.size(); ++i) { numerator += detail::rtd_term(Scalar(r1.ranks(i)), Scalar(r2.ranks(i)), a); }
  return ((a + 1) / a) * numerator / static_cast<Scalar>(norm.value);
}

// ---------------------------------------------------------------------------
// Distance matrices

using Representation = std::variant<ZMatrix, ProbabilityMatrix, RankMatrix>;

struct DistanceMatrix
{
  std::vector<std::string> docs;
  MetricSpec metric;
  MatrixXd values;
};

/// Throws unless `metric` may be evaluated on `rep`: burrows/quadratic need a
/// z-matrix of either mode, cosine a centred z-matrix, jsd probabilities, rtd ranks.
void check_compatible(Representation const &rep, MetricSpec const &metric);

/// Distance between rows i and j of a representation.
double row_distance(Representation const &rep, Index i, Index j, MetricSpec const &metric);

/// Upper triangle evaluated (i < j) and mirrored; the diagonal is zero.
DistanceMatrix pairwise_matrix(Representation const &rep, MetricSpec const &metric, unsigned threads = 1);

void write_distance_csv(std::ostream &out, DistanceMatrix const &d);
DistanceMatrix read_distance_csv(std::string const &path);

} // namespace deltakit
