#include "deltakit/text.hpp"
#include "deltakit/types.hpp"

#include <sstream>

namespace deltakit {

namespace {

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one code point at text[pos]; advances pos. Malformed sequences
// consume one byte and yield kInvalid.
char32_t decode_utf8(std::string_view text, std::size_t &pos)
{
  auto const lead = static_cast<unsigned char>(text[pos]);
  int extra = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if (lead < 0x80) {
    ++pos;
    return lead;
  } else if ((lead & 0xE0) == 0xC0) {
    extra = 1, cp = lead & 0x1F, min = 0x80;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2, cp = lead & 0x0F, min = 0x800;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3, cp = lead & 0x07, min = 0x10000;
  } else {
    ++pos;
    return kInvalid;
  }
  if (pos + extra >= text.size()) {
    ++pos;
    return kInvalid;
  }
  for (int k = 1; k <= extra; ++k) {
    auto const b = static_cast<unsigned char>(text[pos + k]);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return kInvalid;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++pos;
    return kInvalid;
  }
  pos += extra + 1;
  return cp;
}

void append_utf8(std::string &out, char32_t cp)
{
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

// Basic Latin, Latin-1 Supplement, Latin Extended-A and -B letters.
bool is_latin_letter(char32_t c)
{
  if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) { return true; }
  if (c >= 0xC0 && c <= 0xFF) { return c != 0xD7 && c != 0xF7; }
  return c >= 0x100 && c <= 0x24F;
}

// Cyrillic block letters; combining marks and signs in U+0482..U+0489 excluded.
bool is_cyrillic_letter(char32_t c)
{
  if (c < 0x400 || c > 0x4FF) { return false; }
  return c < 0x482 || c > 0x489;
}

char32_t lower_latin(char32_t c)
{
  if (c >= 'A' && c <= 'Z') { return c + 0x20; }
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) { return c + 0x20; }
  if (c == 0x130) { return 'i'; }
  if (c == 0x178) { return 0xFF; }
  // Extended-A alternates upper/lower, with the parity flipping in two ranges.
  if ((c >= 0x100 && c <= 0x137) || (c >= 0x14A && c <= 0x177)) { return c | 1; }
  if ((c >= 0x139 && c <= 0x148) || (c >= 0x179 && c <= 0x17E)) { return (c & 1) ? c + 1 : c; }
  return c;
}

char32_t lower_cyrillic(char32_t c)
{
  if (c >= 0x410 && c <= 0x42F) { return c + 0x20; }
  if (c >= 0x400 && c <= 0x40F) { return c + 0x50; }
  if ((c >= 0x460 && c <= 0x481) || (c >= 0x48A && c <= 0x4BF) || (c >= 0x4D0 && c <= 0x4FF)) { return c | 1; }
  if (c == 0x4C0) { return 0x4CF; }
  if (c >= 0x4C1 && c <= 0x4CE) { return (c & 1) ? c + 1 : c; }
  return c;
}

} // namespace

ScriptSet parse_scripts(std::string_view text)
{
  ScriptSet scripts{false, false};
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    if (item == "latin") {
      scripts.latin = true;
    } else if (item == "cyrillic") {
      scripts.cyrillic = true;
    } else if (!item.empty()) {
      throw Error("unknown script '" + item + "' (expected latin or cyrillic)");
    }
  }
  if (scripts.empty()) { throw Error("script set must not be empty"); }
  return scripts;
}

std::string to_string(ScriptSet scripts)
{
  std::string out;
  if (scripts.latin) { out = "latin"; }
  if (scripts.cyrillic) { out += out.empty() ? "cyrillic" : ",cyrillic"; }
  return out;
}

std::vector<std::string> preprocess_text(std::string_view raw, ScriptSet scripts)
{
  if (scripts.empty()) { throw Error("preprocess_text: script set must not be empty"); }
  std::vector<std::string> tokens;
  std::string current;
  std::size_t pos = 0;
  while (pos < raw.size()) {
    char32_t const cp = decode_utf8(raw, pos);
    if (scripts.latin && is_latin_letter(cp)) {
      append_utf8(current, lower_latin(cp));
    } else if (scripts.cyrillic && is_cyrillic_letter(cp)) {
      append_utf8(current, lower_cyrillic(cp));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) { tokens.push_back(std::move(current)); }
  return tokens;
}

std::vector<std::string> ngramize(std::vector<std::string> const &tokens, int n_min, int n_max)
{
  if (n_min < 1 || n_min > n_max) {
    throw Error("ngramize: need 1 <= n_min <= n_max, got " + std::to_string(n_min) + ".." + std::to_string(n_max));
  }
  if (n_min == 1 && n_max == 1) { return tokens; }
  std::vector<std::string> out;
  auto const count = tokens.size();
  for (int n = n_min; n <= n_max; ++n) {
    auto const width = static_cast<std::size_t>(n);
    for (std::size_t start = 0; start + width <= count; ++start) {
      std::string gram = tokens[start];
      for (std::size_t k = 1; k < width; ++k) {
        gram += ' ';
        gram += tokens[start + k];
      }
      out.push_back(std::move(gram));
    }
  }
  return out;
}

} // namespace deltakit
