#include "deltakit/decompose.hpp"
#include "deltakit/csv.hpp"

#include <algorithm>
#include <ostream>

namespace deltakit {

AuthorProfile author_profile(ZMatrix const &z, Labels const &authors, std::string const &author)
{
  if (static_cast<Index>(authors.size()) != z.values.rows()) { throw Error("author_profile: one label per row required"); }
  std::vector<Index> rows;
  for (std::size_t i = 0; i < authors.size(); ++i) {
    if (authors[i] == author) { rows.push_back(static_cast<Index>(i)); }
  }
  if (rows.empty()) { throw Error("unknown author '" + author + "'"); }
  return rows_profile(z, rows, author);
}

AuthorProfile rows_profile(ZMatrix const &z, std::vector<Index> const &rows, std::string label)
{
  if (rows.empty()) { throw Error("rows_profile: no rows"); }
  VectorXd sum = VectorXd::Zero(z.values.cols());
  for (Index r : rows) {
    if (r < 0 || r >= z.values.rows()) { throw Error("rows_profile: row out of range"); }
    sum += z.values.row(r).transpose();
  }
  auto const support = static_cast<Index>(rows.size());
  return {std::move(label), sum / static_cast<double>(support), support, z.mode};
}

std::string to_string(Favored side)
{
  switch (side) {
  case Favored::Side1: return "side1";
  case Favored::Side2: return "side2";
  case Favored::Neutral: return "neutral";
  }
  return "?";
}

namespace {

VectorXd smoothed_distribution(AuthorProfile const &p, double epsilon)
{
  if (p.mode != ZMode::Uncentred) { throw Error("jsd needs uncentred profiles"); }
  if (!(epsilon >= 0)) { throw Error("smoothing epsilon must be >= 0"); }
  if ((p.mean_z.array() < 0).any()) { throw Error("jsd: negative profile component"); }
  VectorXd const shifted = p.mean_z.array() + epsilon;
  double total = 0;
  for (Index i = 0; i < shifted.size(); ++i) { total += shifted(i); }
  if (!(total > 0)) { throw Error("jsd: profile sums to zero"); }
  return shifted / total;
}

void check_pair(AuthorProfile const &a, AuthorProfile const &b, MetricSpec const &metric)
{
  metric.validate();
  if (a.mean_z.size() != b.mean_z.size()) { throw Error("profiles have different lengths"); }
  if (a.mode != b.mode) { throw Error("profiles mix centred and uncentred z-scores"); }
  if (metric.kind == MetricKind::Cosine && a.mode != ZMode::Centred) { throw Error("cosine needs centred z-scores"); }
  if (metric.kind == MetricKind::Jsd && a.mode != ZMode::Uncentred) {
    throw Error("jsd needs uncentred z-scores; it is not defined on centred z-scores");
  }
}

Favored larger_side(double a, double b)
{
  if (a > b) { return Favored::Side1; }
  if (b > a) { return Favored::Side2; }
  return Favored::Neutral;
}

} // namespace

double profile_distance(AuthorProfile const &side1, AuthorProfile const &side2, MetricSpec const &metric, double epsilon)
{
  check_pair(side1, side2, metric);
  switch (metric.kind) {
  case MetricKind::Burrows: return lp_delta(side1.mean_z, side2.mean_z, 1, metric.normalize_by_n);
  case MetricKind::Quadratic: return lp_delta(side1.mean_z, side2.mean_z, 2);
  case MetricKind::Cosine: return cosine_delta(side1.mean_z, side2.mean_z);
  case MetricKind::Jsd:
    return jensen_shannon_delta(smoothed_distribution(side1, epsilon), smoothed_distribution(side2, epsilon), metric.pi1);
  case MetricKind::Rtd:
    return rank_turbulence_delta(to_ranks(side1.mean_z), to_ranks(side2.mean_z), metric.alpha, metric.rtd_normalizer);
  }
  throw Error("unknown metric");
}

ContributionTable contributions(AuthorProfile const &side1, AuthorProfile const &side2, Vocabulary const &vocab,
                                MetricSpec const &metric, double epsilon)
{
  check_pair(side1, side2, metric);
  auto const n = side1.mean_z.size();
  if (vocab.size() != n) { throw Error("contributions: vocabulary does not match profile length"); }

  ContributionTable table{{}, metric, {side1.author, side2.author}};
  table.rows.reserve(static_cast<std::size_t>(n));
  auto const token = [&](Index i) { return vocab.tokens[static_cast<std::size_t>(i)]; };
  auto const &z1 = side1.mean_z;
  auto const &z2 = side2.mean_z;

  switch (metric.kind) {
  case MetricKind::Quadratic: throw Error("quadratic delta has no additive token decomposition");
  case MetricKind::Burrows:
    for (Index i = 0; i < n; ++i) { table.rows.push_back({token(i), std::abs(z1(i) - z2(i)), larger_side(z1(i), z2(i))}); }
    break;
  case MetricKind::Cosine: {
    double const n1 = z1.norm();
    double const n2 = z2.norm();
    if (!(n1 > 0) || !(n2 > 0)) { throw Error("cosine: zero-magnitude profile"); }
    for (Index i = 0; i < n; ++i) {
      double const u1 = z1(i) / n1;
      double const u2 = z2(i) / n2;
      double const delta = -u1 * u2;
      Favored side = Favored::Neutral;
      if (delta > 0) { side = u1 > 0 ? Favored::Side1 : Favored::Side2; }
      table.rows.push_back({token(i), delta, side});
    }
    break;
  }
  case MetricKind::Jsd: {
    VectorXd const p1 = smoothed_distribution(side1, epsilon);
    VectorXd const p2 = smoothed_distribution(side2, epsilon);
    double const w1 = metric.pi1;
    double const w2 = 1 - w1;
    for (Index i = 0; i < n; ++i) {
      double const m = w1 * p1(i) + w2 * p2(i);
      double const delta = m * std::log2(1 / m) - (w1 * p1(i) * std::log2(1 / p1(i)) + w2 * p2(i) * std::log2(1 / p2(i)));
      table.rows.push_back({token(i), delta, larger_side(p1(i), p2(i))});
    }
    break;
  }
  case MetricKind::Rtd: {
    auto const r1 = to_ranks(z1);
    auto const r2 = to_ranks(z2);
    VectorXd const terms = rank_turbulence_terms(r1, r2, metric.alpha, metric.rtd_normalizer);
    for (Index i = 0; i < n; ++i) {
      // smaller rank is the better rank
      table.rows.push_back({token(i), terms(i), larger_side(r2.ranks(i), r1.ranks(i))});
    }
    break;
  }
  }
  return table;
}

ContributionTable top_k(ContributionTable const &table, std::size_t k)
{
  if (k < 1) { throw Error("top_k: k must be >= 1"); }
  ContributionTable out{{}, table.metric, table.pair};
  bool const cosine = table.metric.kind == MetricKind::Cosine;
  for (auto const &row : table.rows) {
    if (!cosine || row.delta > 0) { out.rows.push_back(row); }
  }
  auto const key = [cosine](Contribution const &c) { return cosine ? c.delta : std::abs(c.delta); };
  std::sort(out.rows.begin(), out.rows.end(), [&](Contribution const &a, Contribution const &b) {
    if (key(a) != key(b)) { return key(a) > key(b); }
    return a.token < b.token;
  });
  if (out.rows.size() > k) { out.rows.resize(k); }
  return out;
}

void write_contributions_csv(std::ostream &out, ContributionTable const &table)
{
  csv::write_row(out, {"token", "delta", "favored", "rank"});
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    auto const &row = table.rows[i];
    std::string side = "neutral";
    if (row.favored == Favored::Side1) { side = table.pair.first; }
    if (row.favored == Favored::Side2) { side = table.pair.second; }
    csv::write_row(out, {row.token, csv::format_real(row.delta), side, std::to_string(i + 1)});
  }
}

} // namespace deltakit
