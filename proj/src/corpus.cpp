#include "deltakit/corpus.hpp"
#include "deltakit/csv.hpp"
#include "deltakit/parallel.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace deltakit {

namespace fs = std::filesystem;

std::vector<std::string> tokenize(std::string_view text, TokenizerOptions const &options)
{
  return ngramize(preprocess_text(text, options.scripts), options.ngram_min, options.ngram_max);
}

std::vector<DocumentRecord> read_manifest(std::string const &path)
{
  auto const rows = csv::read_file(path);
  if (rows.empty()) { throw Error("manifest '" + path + "' is empty"); }
  Labels const expected{"id", "author", "title", "year", "path"};
  if (rows.front() != expected) { throw Error("manifest header must be id,author,title,year,path"); }

  auto const base = fs::path(path).parent_path();
  std::vector<DocumentRecord> records;
  std::set<std::string> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    auto const &row = rows[r];
    if (row.size() != 5) {
      throw Error("manifest line " + std::to_string(r + 1) + ": expected 5 fields, got " + std::to_string(row.size()));
    }
    DocumentRecord rec{row[0], row[1], row[2], std::nullopt, row[4]};
    if (rec.id.empty()) { throw Error("manifest line " + std::to_string(r + 1) + ": empty id"); }
    if (rec.author.empty()) { throw Error("document '" + rec.id + "' has an empty author"); }
    if (!seen.insert(rec.id).second) { throw Error("duplicate document id '" + rec.id + "'"); }
    if (!row[3].empty()) { rec.year = static_cast<int>(csv::parse_integer(row[3])); }
    if (!rec.source.empty() && fs::path(rec.source).is_relative()) { rec.source = (base / rec.source).string(); }
    records.push_back(std::move(rec));
  }
  return records;
}

void write_manifest(std::ostream &out, std::vector<DocumentRecord> const &records)
{
  csv::write_row(out, {"id", "author", "title", "year", "path"});
  for (auto const &rec : records) {
    csv::write_row(out, {rec.id, rec.author, rec.title, rec.year ? std::to_string(*rec.year) : "", rec.source});
  }
}

namespace {

void validate_records(std::vector<DocumentRecord> const &records, Index vocab_cap)
{
  if (records.size() < 2) { throw Error("a corpus needs at least 2 documents"); }
  if (vocab_cap < 1) { throw Error("vocabulary cap must be >= 1"); }
  std::set<std::string> seen;
  for (auto const &rec : records) {
    if (rec.author.empty()) { throw Error("document '" + rec.id + "' has an empty author"); }
    if (!seen.insert(rec.id).second) { throw Error("duplicate document id '" + rec.id + "'"); }
  }
}

using TokenCounts = std::unordered_map<std::string, std::int64_t>;

FrequencyMatrix assemble(std::vector<DocumentRecord> const &records, std::vector<TokenCounts> const &per_doc, Index vocab_cap)
{
  std::map<std::string, std::int64_t> totals;
  for (auto const &doc : per_doc) {
    for (auto const &[token, n] : doc) { totals[token] += n; }
  }
  std::vector<std::pair<std::string, std::int64_t>> ranked(totals.begin(), totals.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](auto const &a, auto const &b) { return a.second > b.second; });
  if (static_cast<Index>(ranked.size()) > vocab_cap) { ranked.resize(static_cast<std::size_t>(vocab_cap)); }

  FrequencyMatrix m;
  for (auto const &rec : records) { m.docs.push_back(rec.id); }
  for (auto &entry : ranked) { m.vocab.tokens.push_back(entry.first); }
  m.counts = CountMatrix::Zero(static_cast<Index>(records.size()), m.vocab.size());
  for (std::size_t i = 0; i < per_doc.size(); ++i) {
    for (Index j = 0; j < m.vocab.size(); ++j) {
      auto const it = per_doc[i].find(m.vocab.tokens[static_cast<std::size_t>(j)]);
      if (it != per_doc[i].end()) { m.counts(static_cast<Index>(i), j) = it->second; }
    }
  }
  return m;
}

} // namespace

FrequencyMatrix count_documents(std::vector<DocumentRecord> const &records,
                                std::vector<std::string> const &texts,
                                Index vocab_cap,
                                TokenizerOptions const &options,
                                unsigned threads)
{
  validate_records(records, vocab_cap);
  if (texts.size() != records.size()) { throw Error("count_documents: one text per record required"); }
  std::vector<TokenCounts> per_doc(records.size());
  parallel_for(records.size(), threads, [&](std::size_t i) {
    auto const tokens = tokenize(texts[i], options);
    if (tokens.empty()) { throw Error("document '" + records[i].id + "' contains no tokens"); }
    for (auto const &t : tokens) { ++per_doc[i][t]; }
  });
  return assemble(records, per_doc, vocab_cap);
}

FrequencyMatrix build_frequency_matrix(std::vector<DocumentRecord> const &records,
                                       Index vocab_cap,
                                       TokenizerOptions const &options,
                                       unsigned threads)
{
  validate_records(records, vocab_cap);
  std::vector<std::string> texts(records.size());
  parallel_for(records.size(), threads, [&](std::size_t i) {
    std::ifstream in(records[i].source, std::ios::binary);
    if (!in) { throw Error("cannot read source '" + records[i].source + "' of document '" + records[i].id + "'"); }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    texts[i] = buffer.str();
  });
  return count_documents(records, texts, vocab_cap, options, threads);
}

FrequencyMatrix select_mfw(FrequencyMatrix const &matrix, Index mfw)
{
  if (mfw < 1 || mfw > matrix.vocab.size()) {
    throw Error("mfw " + std::to_string(mfw) + " outside 1.." + std::to_string(matrix.vocab.size()));
  }
  FrequencyMatrix out;
  out.docs = matrix.docs;
  out.vocab.tokens.assign(matrix.vocab.tokens.begin(), matrix.vocab.tokens.begin() + mfw);
  out.counts = matrix.counts.leftCols(mfw);
  return out;
}

FrequencyMatrix select_documents(FrequencyMatrix const &matrix, std::vector<Index> const &rows)
{
  FrequencyMatrix out;
  out.vocab = matrix.vocab;
  out.counts.resize(static_cast<Index>(rows.size()), matrix.counts.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    auto const r = rows[k];
    if (r < 0 || r >= matrix.counts.rows()) { throw Error("select_documents: row out of range"); }
    out.docs.push_back(matrix.docs[static_cast<std::size_t>(r)]);
    out.counts.row(static_cast<Index>(k)) = matrix.counts.row(r);
  }
  return out;
}

Labels authors_of(FrequencyMatrix const &matrix, std::vector<DocumentRecord> const &records)
{
  std::unordered_map<std::string, std::string> by_id;
  for (auto const &rec : records) { by_id.emplace(rec.id, rec.author); }
  Labels out;
  for (auto const &id : matrix.docs) {
    auto const it = by_id.find(id);
    if (it == by_id.end()) { throw Error("document '" + id + "' is missing from the manifest"); }
    out.push_back(it->second);
  }
  return out;
}

void write_frequency_csv(std::ostream &out, FrequencyMatrix const &matrix)
{
  csv::Row header{"id"};
  header.insert(header.end(), matrix.vocab.tokens.begin(), matrix.vocab.tokens.end());
  csv::write_row(out, header);
  for (Index i = 0; i < matrix.counts.rows(); ++i) {
    csv::Row row{matrix.docs[static_cast<std::size_t>(i)]};
    for (Index j = 0; j < matrix.counts.cols(); ++j) { row.push_back(std::to_string(matrix.counts(i, j))); }
    csv::write_row(out, row);
  }
}

FrequencyMatrix read_frequency_csv(std::string const &path)
{
  auto const rows = csv::read_file(path);
  if (rows.empty() || rows.front().empty() || rows.front().front() != "id") {
    throw Error("'" + path + "' is not a frequency matrix (header must start with id)");
  }
  FrequencyMatrix m;
  m.vocab.tokens.assign(rows.front().begin() + 1, rows.front().end());
  auto const cols = m.vocab.size();
  m.counts.resize(static_cast<Index>(rows.size() - 1), cols);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (static_cast<Index>(rows[r].size()) != cols + 1) {
      throw Error("'" + path + "' line " + std::to_string(r + 1) + ": wrong number of fields");
    }
    m.docs.push_back(rows[r][0]);
    for (Index j = 0; j < cols; ++j) {
      auto const v = csv::parse_integer(rows[r][static_cast<std::size_t>(j + 1)]);
      if (v < 0) { throw Error("'" + path + "': negative count"); }
      m.counts(static_cast<Index>(r - 1), j) = v;
    }
  }
  return m;
}

} // namespace deltakit
