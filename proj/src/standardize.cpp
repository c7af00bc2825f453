#include "deltakit/standardize.hpp"
#include "deltakit/csv.hpp"

#include <iostream>

namespace deltakit {

namespace {

void clog_sink(std::string const &message) { std::clog << "warning: " << message << '\n'; }
WarningSink g_sink = &clog_sink;

} // namespace

void set_warning_sink(WarningSink sink) { g_sink = sink ? sink : &clog_sink; }
void warn(std::string const &message) { g_sink(message); }

std::string to_string(ZMode mode) { return mode == ZMode::Centred ? "centred" : "uncentred"; }

ZMode parse_zmode(std::string const &text)
{
  if (text == "centred" || text == "centered") { return ZMode::Centred; }
  if (text == "uncentred" || text == "uncentered") { return ZMode::Uncentred; }
  throw Error("unknown z-score mode '" + text + "' (expected centred or uncentred)");
}

RelativeFrequencies relative_frequencies(FrequencyMatrix const &m)
{
  if ((m.counts.array() < 0).any()) { throw Error("relative_frequencies: negative count"); }
  return {m.docs, m.vocab, row_normalize(m.counts)};
}

StandardizationStats fit_stats(RelativeFrequencies const &relfreq, int ddof)
{
  if (relfreq.values.rows() < 2) { throw Error("fit_stats: at least 2 documents required"); }
  if (relfreq.values.cols() != relfreq.vocab.size()) { throw Error("fit_stats: vocabulary does not match columns"); }
  StandardizationStats stats;
  stats.vocab = relfreq.vocab;
  stats.ddof = ddof;
  std::tie(stats.mu, stats.sigma) = column_moments(relfreq.values, ddof);
  for (Index j = 0; j < stats.sigma.size(); ++j) {
    // a constant column leaves only rounding noise in the two-pass deviation
    if (stats.sigma(j) <= 1e-13 * std::abs(stats.mu(j))) {
      stats.dropped.push_back(stats.vocab.tokens[static_cast<std::size_t>(j)]);
    } else {
      stats.retained.push_back(j);
    }
  }
  if (stats.retained.empty()) { throw Error("fit_stats: every token has zero variance"); }
  if (!stats.dropped.empty()) {
    warn("dropped " + std::to_string(stats.dropped.size()) + " zero-variance token(s), first: '" +
         stats.dropped.front() + "'");
  }
  return stats;
}

ZMatrix z_transform(RelativeFrequencies const &relfreq, StandardizationStats const &stats, ZMode mode)
{
  if (!(relfreq.vocab == stats.vocab)) { throw Error("z_transform: stats were fitted on a different vocabulary"); }
  ZMatrix z;
  z.docs = relfreq.docs;
  z.mode = mode;
  auto const n = static_cast<Index>(stats.retained.size());
  z.values.resize(relfreq.values.rows(), n);
  for (Index k = 0; k < n; ++k) {
    Index const j = stats.retained[static_cast<std::size_t>(k)];
    z.vocab.tokens.push_back(stats.vocab.tokens[static_cast<std::size_t>(j)]);
    if (mode == ZMode::Centred) {
      z.values.col(k) = (relfreq.values.col(j).array() - stats.mu(j)) / stats.sigma(j);
    } else {
      z.values.col(k) = relfreq.values.col(j) / stats.sigma(j);
    }
  }
  return z;
}

ProbabilityMatrix to_probability(ZMatrix const &z, double epsilon)
{
  if (z.mode != ZMode::Uncentred) { throw Error("probabilities need uncentred z-scores (centred rows have negative components)"); }
  if (!(epsilon >= 0)) { throw Error("smoothing epsilon must be >= 0"); }
  if ((z.values.array() < 0).any()) { throw Error("to_probability: negative component"); }
  ProbabilityMatrix p{z.docs, z.vocab, MatrixXd(z.values.rows(), z.values.cols()), epsilon};
  for (Index i = 0; i < z.values.rows(); ++i) {
    VectorXd const shifted = z.values.row(i).transpose().array() + epsilon;
    double total = 0;
    for (Index j = 0; j < shifted.size(); ++j) { total += shifted(j); }
    if (!(total > 0)) { throw Error("to_probability: row " + std::to_string(i) + " sums to zero"); }
    p.rho.row(i) = (shifted / total).transpose();
  }
  return p;
}

RankMatrix to_rank_matrix(ZMatrix const &z)
{
  RankMatrix r{z.docs, z.vocab, MatrixXd(z.values.rows(), z.values.cols()), z.mode};
  for (Index i = 0; i < z.values.rows(); ++i) { r.ranks.row(i) = to_ranks(z.values.row(i)).ranks.transpose(); }
  return r;
}

void write_real_csv(std::ostream &out, std::vector<std::string> const &docs, Vocabulary const &vocab, MatrixXd const &values)
{
  csv::Row header{"id"};
  header.insert(header.end(), vocab.tokens.begin(), vocab.tokens.end());
  csv::write_row(out, header);
  for (Index i = 0; i < values.rows(); ++i) {
    csv::Row row{docs[static_cast<std::size_t>(i)]};
    for (Index j = 0; j < values.cols(); ++j) { row.push_back(csv::format_real(values(i, j))); }
    csv::write_row(out, row);
  }
}

} // namespace deltakit
