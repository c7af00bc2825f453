#pragma once

#include "deltakit/text.hpp"
#include "deltakit/types.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace deltakit {

struct DocumentRecord
{
  std::string id;
  std::string author;
  std::string title;
  std::optional<int> year;
  std::string source; ///< path of the plain-text file
};

/// Tokens ordered by descending total corpus count, ties broken lexicographically.
/// A token's position is its global rank.
struct Vocabulary
{
  std::vector<std::string> tokens;

  Index size() const { return static_cast<Index>(tokens.size()); }
  friend bool operator==(Vocabulary const &, Vocabulary const &) = default;
};

/// Document x token counts. Column j counts vocab.tokens[j].
struct FrequencyMatrix
{
  std::vector<std::string> docs;
  Vocabulary vocab;
  CountMatrix counts;
};

struct TokenizerOptions
{
  ScriptSet scripts;
  int ngram_min = 1;
  int ngram_max = 1;
};

/// Tokens of one document: preprocess_text followed by ngramize.
std::vector<std::string> tokenize(std::string_view text, TokenizerOptions const &options);

/// Reads the `id,author,title,year,path` manifest. Relative paths are resolved
/// against the manifest's directory.
std::vector<DocumentRecord> read_manifest(std::string const &path);
void write_manifest(std::ostream &out, std::vector<DocumentRecord> const &records);

/// Builds the matrix from in-memory texts, one per record (record.source unused).
FrequencyMatrix count_documents(std::vector<DocumentRecord> const &records,
                                std::vector<std::string> const &texts,
                                Index vocab_cap,
                                TokenizerOptions const &options = {},
                                unsigned threads = 1);

/// Reads every record's source file and builds the top-`vocab_cap` matrix.
FrequencyMatrix build_frequency_matrix(std::vector<DocumentRecord> const &records,
                                       Index vocab_cap,
                                       TokenizerOptions const &options = {},
                                       unsigned threads = 1);

/// Column prefix covering the `mfw` highest-ranked tokens.
FrequencyMatrix select_mfw(FrequencyMatrix const &matrix, Index mfw);

/// Restricts the matrix to the given rows, in the given order.
FrequencyMatrix select_documents(FrequencyMatrix const &matrix, std::vector<Index> const &rows);

/// Author label of each matrix row, looked up by document id.
Labels authors_of(FrequencyMatrix const &matrix, std::vector<DocumentRecord> const &records);

void write_frequency_csv(std::ostream &out, FrequencyMatrix const &matrix);
FrequencyMatrix read_frequency_csv(std::string const &path);

} // namespace deltakit
