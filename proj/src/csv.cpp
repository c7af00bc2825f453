#include "deltakit/csv.hpp"
#include "deltakit/types.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace deltakit::csv {

std::vector<Row> parse(std::string const &text)
{
  std::vector<Row> rows;
  Row row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t i = 0;
  if (text.rfind("\xEF\xBB\xBF", 0) == 0) { i = 3; }

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    if (!(row.size() == 1 && row.front().empty())) { rows.push_back(std::move(row)); }
    row.clear();
  };

  for (; i < text.size(); ++i) {
    char const c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
    case '"':
      if (field_started) { throw Error("csv: stray quote inside unquoted field"); }
      in_quotes = true;
      field_started = true;
      break;
    case ',': end_field(); break;
    case '\r':
      if (i + 1 < text.size() && text[i + 1] == '\n') { ++i; }
      end_row();
      break;
    case '\n': end_row(); break;
    default:
      field += c;
      field_started = true;
    }
  }
  if (in_quotes) { throw Error("csv: unterminated quoted field"); }
  if (field_started || !row.empty()) { end_row(); }
  return rows;
}

std::vector<Row> read_file(std::string const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) { throw Error("cannot open '" + path + "'"); }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

std::string quote(std::string const &field)
{
  if (field.find_first_of(",\"\r\n") == std::string::npos) { return field; }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') { out += '"'; }
    out += c;
  }
  out += '"';
  return out;
}

void write_row(std::ostream &out, Row const &row)
{
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) { out << ','; }
    out << quote(row[i]);
  }
  out << '\n';
}

std::string format_real(double value)
{
  if (std::isnan(value)) { return "nan"; }
  char buf[64];
  auto const [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) { throw Error("csv: cannot format real"); }
  return std::string(buf, end);
}

double parse_real(std::string const &text)
{
  if (text == "nan") { return std::nan(""); }
  double value = 0;
  auto const *first = text.data();
  auto const *last = first + text.size();
  if (first != last && *first == '+') { ++first; }
  auto const [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) { throw Error("csv: not a real number: '" + text + "'"); }
  return value;
}

long long parse_integer(std::string const &text)
{
  long long value = 0;
  auto const [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error("csv: not an integer: '" + text + "'");
  }
  return value;
}

} // namespace deltakit::csv
