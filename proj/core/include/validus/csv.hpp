#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "validus/dataset.hpp"

namespace validus {

struct CsvRow {
  std::size_t line = 0;  // line where the record starts
  std::vector<std::string> cells;
};

/// RFC 4180 records: quoted fields may hold commas, doubled quotes and line
/// breaks; CRLF and LF both end records. A leading UTF-8 BOM is skipped.
/// Throws CsvError on an unterminated quote.
std::vector<CsvRow> read_csv(std::string_view text);

/// Quotes only the fields that need it.
std::string write_csv_row(const std::vector<std::string> &cells);

/// One table in wide layout: a unit column, an optional time column (used
/// when the header has it) and one column per variable. Empty cells and `NA`
/// become NA, numeric cells numbers, anything else text. Throws CsvError and
/// DuplicateKey.
std::vector<DataPoint> ingest_table(const std::string &table, std::string_view text,
                                    const std::string &unit_column = "id",
                                    const std::optional<std::string> &time_column = "time");

/// Inverse of ingest_table: header `unit[,time],variables...` (variables
/// sorted), rows ordered by unit then time, NA written as `NA`.
std::string export_table(const Dataset &dataset, const std::string &table,
                         const std::string &unit_column = "id",
                         const std::optional<std::string> &time_column = "time");

} // namespace validus
