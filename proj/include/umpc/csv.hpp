// Copyright 2026 The umpc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Tabular input and output: RFC 4180 CSV, JSON, and dataset ingestion.

#ifndef UMPC_CSV_HPP_
#define UMPC_CSV_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "umpc/dataset.hpp"

namespace umpc {

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

// Shortest representation that round-trips; "inf", "-inf", "nan" otherwise.
std::string format_double(double v);
std::string format_cell(const Cell& c);
std::string csv_escape(std::string_view field);

// One "# ..." comment line, the header, then the rows. '\n' line endings.
void write_csv(std::ostream& os, const Table& t, const std::string& comment);
// {"meta": {...}, "columns": [...], "rows": [[...], ...]}
void write_json(std::ostream& os, const Table& t,
                const std::vector<std::pair<std::string, std::string>>& meta);

// Parses RFC 4180 CSV. Lines starting with '#' outside quotes are skipped.
std::vector<std::vector<std::string>> parse_csv(std::istream& is);

std::uint64_t fnv1a(std::string_view data);

enum class Normalization { kMinMax, kRaw, kCategorical };

struct ColumnSpec {
  std::string name;
  Normalization norm = Normalization::kMinMax;
};

// "a,b:cat,c:raw"; a column without a suffix is min-max normalized.
std::vector<ColumnSpec> parse_columns(const std::string& spec);

// Reads the selected columns as one row per party. Rows where a selected
// field is empty, "NA" or "?" are dropped and counted. Numeric columns are
// min-max normalized to [0,1] (constant columns become 0 with a warning);
// categorical columns are label-encoded in order of first occurrence.
// Throws ConfigError for missing columns, ParseError for non-numeric
// values in numeric columns.
Dataset load_csv(const std::string& path, const std::vector<ColumnSpec>& cols);
Dataset load_csv(std::istream& is, const std::vector<ColumnSpec>& cols);

}  // namespace umpc

#endif  // UMPC_CSV_HPP_
