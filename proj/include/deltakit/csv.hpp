#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace deltakit::csv {

using Row = std::vector<std::string>;

/// Parses RFC 4180 CSV: quoted fields, doubled quotes, CRLF or LF line ends.
/// A UTF-8 byte-order mark at the start is skipped.
std::vector<Row> parse(std::string const &text);
std::vector<Row> read_file(std::string const &path);

std::string quote(std::string const &field);
void write_row(std::ostream &out, Row const &row);

/// Shortest decimal text that round-trips to the same double.
std::string format_real(double value);
double parse_real(std::string const &text);
long long parse_integer(std::string const &text);

} // namespace deltakit::csv
