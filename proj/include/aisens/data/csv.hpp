//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AISENS_DATA_CSV_HPP_
#define AISENS_DATA_CSV_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace aisens::data {

using CsvRow = std::vector<std::string>;

/// Parses RFC 4180 text: quoted fields with "" escapes, CRLF or LF line
/// ends, optional final newline. Throws FormatError on an unterminated
/// quote or stray characters after a closing quote.
std::vector<CsvRow> parse_csv(std::string_view text);

/// Quotes a field when it contains a comma, quote or line break.
std::string csv_escape(std::string_view field);

std::string csv_line(const CsvRow &fields);

}  // namespace aisens::data

#endif  // AISENS_DATA_CSV_HPP_
