#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace deltakit {

/// Alphabets whose letters are kept as token characters.
struct ScriptSet
{
  bool latin = true;
  bool cyrillic = true;

  bool empty() const { return !latin && !cyrillic; }
  friend bool operator==(ScriptSet const &, ScriptSet const &) = default;
};

/// Parses a comma-separated list such as "latin,cyrillic".
ScriptSet parse_scripts(std::string_view text);
std::string to_string(ScriptSet scripts);

/// Lowercases UTF-8 text and splits it into maximal runs of allowed letters.
/// Every other code point, including digits, hyphens, apostrophes and invalid
/// bytes, separates tokens. Stopwords are never filtered.
std::vector<std::string> preprocess_text(std::string_view raw, ScriptSet scripts = {});

/// All contiguous word n-grams with n_min <= n <= n_max, joined by one space.
/// Output is grouped by n ascending, each group in document order.
std::vector<std::string> ngramize(std::vector<std::string> const &tokens, int n_min, int n_max);

} // namespace deltakit
