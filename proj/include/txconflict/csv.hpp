#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace txconflict::csv {

using Row = std::vector<std::string>;

/// Quotes a field when it contains a comma, quote, CR or LF (RFC 4180).
std::string escape(std::string_view field);

/// One record terminated by CRLF.
std::string format_row(const Row& row);

/// Parses RFC 4180 text (CRLF or LF line endings, quoted fields may span
/// lines). Throws std::invalid_argument on an unterminated quoted field.
std::vector<Row> parse(std::string_view text);

}  // namespace txconflict::csv
