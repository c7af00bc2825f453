#include "deltakit/metrics.hpp"
#include "deltakit/csv.hpp"
#include "deltakit/parallel.hpp"

#include <ostream>

namespace deltakit {

void MetricSpec::validate() const
{
  if (!(pi1 > 0 && pi1 < 1)) { throw Error("pi1 must lie in (0, 1)"); }
  if (!(alpha > 0) || !std::isfinite(alpha)) { throw Error("alpha must be a positive finite number"); }
}

std::string to_string(MetricKind kind)
{
  switch (kind) {
  case MetricKind::Burrows: return "burrows";
  case MetricKind::Quadratic: return "quadratic";
  case MetricKind::Cosine: return "cosine";
  case MetricKind::Jsd: return "jsd";
  case MetricKind::Rtd: return "rtd";
  }
  return "?";
}

MetricKind parse_metric_kind(std::string const &text)
{
  for (auto k : {MetricKind::Burrows, MetricKind::Quadratic, MetricKind::Cosine, MetricKind::Jsd, MetricKind::Rtd}) {
    if (to_string(k) == text) { return k; }
  }
  throw Error("unknown metric '" + text + "' (expected burrows, quadratic, cosine, jsd or rtd)");
}

std::string to_string(RtdNormalizerMode mode) { return mode == RtdNormalizerMode::Literal ? "literal" : "exclusive"; }

RtdNormalizerMode parse_rtd_normalizer(std::string const &text)
{
  if (text == "literal") { return RtdNormalizerMode::Literal; }
  if (text == "exclusive") { return RtdNormalizerMode::Exclusive; }
  throw Error("unknown rtd normalizer '" + text + "' (expected literal or exclusive)");
}

void check_compatible(Representation const &rep, MetricSpec const &metric)
{
  metric.validate();
  auto const name = to_string(metric.kind);
  switch (metric.kind) {
  case MetricKind::Burrows:
  case MetricKind::Quadratic:
    if (!std::holds_alternative<ZMatrix>(rep)) { throw Error(name + " needs a z-score matrix"); }
    break;
  case MetricKind::Cosine:
    if (!std::holds_alternative<ZMatrix>(rep) || std::get<ZMatrix>(rep).mode != ZMode::Centred) {
      throw Error("cosine needs centred z-scores");
    }
    break;
  case MetricKind::Jsd:
    if (!std::holds_alternative<ProbabilityMatrix>(rep)) {
      throw Error("jsd needs a probability matrix built from uncentred z-scores; it is not defined on centred z-scores");
    }
    break;
  case MetricKind::Rtd:
    if (!std::holds_alternative<RankMatrix>(rep)) { throw Error("rtd needs a rank matrix"); }
    break;
  }
}

double row_distance(Representation const &rep, Index i, Index j, MetricSpec const &metric)
{
  switch (metric.kind) {
  case MetricKind::Burrows: {
    auto const &z = std::get<ZMatrix>(rep).values;
    return lp_delta(z.row(i), z.row(j), 1, metric.normalize_by_n);
  }
  case MetricKind::Quadratic: {
    auto const &z = std::get<ZMatrix>(rep).values;
    return lp_delta(z.row(i), z.row(j), 2);
  }
  case MetricKind::Cosine: {
    auto const &z = std::get<ZMatrix>(rep).values;
    return cosine_delta(z.row(i), z.row(j));
  }
  case MetricKind::Jsd: {
    auto const &p = std::get<ProbabilityMatrix>(rep).rho;
    return jensen_shannon_delta(p.row(i), p.row(j), metric.pi1);
  }
  case MetricKind::Rtd: {
    auto const &r = std::get<RankMatrix>(rep).ranks;
    RankVector const a{r.row(i).transpose(), r.cols()};
    RankVector const b{r.row(j).transpose(), r.cols()};
    return rank_turbulence_delta(a, b, metric.alpha, metric.rtd_normalizer);
  }
  }
  throw Error("unknown metric");
}

DistanceMatrix pairwise_matrix(Representation const &rep, MetricSpec const &metric, unsigned threads)
{
  check_compatible(rep, metric);
  auto const &docs = std::visit([](auto const &m) -> std::vector<std::string> const & { return m.docs; }, rep);
  auto const n = static_cast<Index>(docs.size());
  DistanceMatrix d{docs, metric, MatrixXd::Zero(n, n)};
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t row) {
    auto const i = static_cast<Index>(row);
    for (Index j = i + 1; j < n; ++j) { d.values(i, j) = row_distance(rep, i, j, metric); }
  });
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < i; ++j) { d.values(i, j) = d.values(j, i); }
  }
  return d;
}

void write_distance_csv(std::ostream &out, DistanceMatrix const &d)
{
  csv::Row header{"id"};
  header.insert(header.end(), d.docs.begin(), d.docs.end());
  csv::write_row(out, header);
  for (Index i = 0; i < d.values.rows(); ++i) {
    csv::Row row{d.docs[static_cast<std::size_t>(i)]};
    for (Index j = 0; j < d.values.cols(); ++j) { row.push_back(csv::format_real(d.values(i, j))); }
    csv::write_row(out, row);
  }
}

DistanceMatrix read_distance_csv(std::string const &path)
{
  auto const rows = csv::read_file(path);
  if (rows.empty() || rows.front().empty() || rows.front().front() != "id") {
    throw Error("'" + path + "' is not a distance matrix (header must start with id)");
  }
  DistanceMatrix d;
  d.docs.assign(rows.front().begin() + 1, rows.front().end());
  auto const n = static_cast<Index>(d.docs.size());
  if (static_cast<Index>(rows.size()) != n + 1) { throw Error("'" + path + "': distance matrix is not square"); }
  d.values.resize(n, n);
  for (Index i = 0; i < n; ++i) {
    auto const &row = rows[static_cast<std::size_t>(i + 1)];
    if (static_cast<Index>(row.size()) != n + 1 || row[0] != d.docs[static_cast<std::size_t>(i)]) {
      throw Error("'" + path + "': row " + std::to_string(i + 1) + " does not match the header");
    }
    for (Index j = 0; j < n; ++j) { d.values(i, j) = csv::parse_real(row[static_cast<std::size_t>(j + 1)]); }
  }
  return d;
}

} // namespace deltakit
