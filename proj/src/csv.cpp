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

#include "umpc/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include "json.hpp"
#include "umpc/error.hpp"

namespace umpc {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_cell(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  return std::get<std::string>(c);
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void write_csv(std::ostream& os, const Table& t, const std::string& comment) {
  os << "# " << comment << '\n';
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i) os << ',';
    os << csv_escape(t.header[i]);
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << csv_escape(format_cell(row[i]));
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& t,
                const std::vector<std::pair<std::string, std::string>>& meta) {
  nlohmann::ordered_json j;
  j["meta"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : meta) j["meta"][k] = v;
  j["columns"] = t.header;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const Cell& c : row) {
      if (const auto* i = std::get_if<std::int64_t>(&c)) {
        r.push_back(*i);
      } else if (const auto* d = std::get_if<double>(&c)) {
        if (std::isfinite(*d)) {
          r.push_back(*d);
        } else {
          r.push_back(format_double(*d));
        }
      } else {
        r.push_back(std::get<std::string>(c));
      }
    }
    j["rows"].push_back(std::move(r));
  }
  os << j.dump(2) << '\n';
}

std::vector<std::vector<std::string>> parse_csv(std::istream& is) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false, at_line_start = true, field_started = false;
  char ch;
  auto end_row = [&]() {
    row.push_back(std::move(field));
    field.clear();
    rows.push_back(std::move(row));
    row.clear();
    at_line_start = true;
    field_started = false;
  };
  while (is.get(ch)) {
    if (in_quotes) {
      if (ch == '"') {
        if (is.peek() == '"') {
          is.get(ch);
          field += '"';
        } else {
          in_quotes = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    if (at_line_start && ch == '#') {
      std::string skip;
      std::getline(is, skip);
      continue;
    }
    at_line_start = false;
    if (ch == '"' && !field_started) {
      in_quotes = true;
      field_started = true;
    } else if (ch == ',') {
      row.push_back(std::move(field));
      field.clear();
      field_started = false;
    } else if (ch == '\n') {
      end_row();
    } else if (ch == '\r') {
      if (is.peek() == '\n') is.get(ch);
      end_row();
    } else {
      field += ch;
      field_started = true;
    }
  }
  if (in_quotes) throw ParseError("csv: unterminated quoted field");
  if (!at_line_start) end_row();
  return rows;
}

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<ColumnSpec> parse_columns(const std::string& spec) {
  std::vector<ColumnSpec> out;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t comma = std::min(spec.find(',', start), spec.size());
    std::string item = spec.substr(start, comma - start);
    start = comma + 1;
    if (item.empty()) {
      throw ConfigError("columns: empty column name in '" + spec + "'");
    }
    ColumnSpec c;
    const std::size_t colon = item.rfind(':');
    if (colon != std::string::npos) {
      const std::string kind = item.substr(colon + 1);
      item.resize(colon);
      if (kind == "num") {
        c.norm = Normalization::kMinMax;
      } else if (kind == "raw") {
        c.norm = Normalization::kRaw;
      } else if (kind == "cat") {
        c.norm = Normalization::kCategorical;
      } else {
        throw ConfigError("columns: unknown kind '" + kind +
                          "' (expected num|raw|cat)");
      }
    }
    c.name = item;
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

bool is_missing(const std::string& s) {
  return s.empty() || s == "NA" || s == "?" || s == "na" || s == "NaN";
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

Dataset load_csv(std::istream& is, const std::vector<ColumnSpec>& cols) {
  if (cols.empty()) throw ConfigError("load_csv: no columns selected");
  auto rows = parse_csv(is);
  if (rows.empty()) throw ParseError("load_csv: missing header row");
  const auto& header = rows.front();
  std::vector<std::size_t> idx;
  for (const auto& c : cols) {
    const auto it = std::find_if(header.begin(), header.end(), [&](const auto& h) {
      return trim(h) == c.name;
    });
    if (it == header.end()) {
      throw ConfigError("load_csv: column '" + c.name + "' not in header");
    }
    idx.push_back(static_cast<std::size_t>(it - header.begin()));
  }

  const std::size_t k = cols.size();
  std::vector<double> values;
  std::vector<std::map<std::string, double>> labels(k);
  std::size_t dropped = 0;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() == 1 && row[0].empty()) continue;  // blank line
    bool missing = false;
    std::vector<std::string> fields(k);
    for (std::size_t c = 0; c < k; ++c) {
      fields[c] = idx[c] < row.size() ? trim(row[idx[c]]) : "";
      missing = missing || is_missing(fields[c]);
    }
    if (missing) {
      ++dropped;
      continue;
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (cols[c].norm == Normalization::kCategorical) {
        auto [it, inserted] = labels[c].try_emplace(
            fields[c], static_cast<double>(labels[c].size()));
        values.push_back(it->second);
        continue;
      }
      double v = 0.0;
      const char* b = fields[c].data();
      const char* e = b + fields[c].size();
      const auto res = std::from_chars(b, e, v);
      if (res.ec != std::errc() || res.ptr != e || !std::isfinite(v)) {
        throw ParseError("load_csv: non-numeric value '" + fields[c] +
                         "' in column '" + cols[c].name + "' at data row " +
                         std::to_string(r));
      }
      values.push_back(v);
    }
  }

  Dataset d(k, std::move(values));
  d.dropped_rows = dropped;
  for (const auto& c : cols) d.column_names.push_back(c.name);
  for (std::size_t c = 0; c < k; ++c) {
    if (cols[c].norm != Normalization::kMinMax || d.size() == 0) continue;
    double lo = d.row(0)[c], hi = lo;
    for (std::size_t i = 0; i < d.size(); ++i) {
      lo = std::min(lo, d.row(i)[c]);
      hi = std::max(hi, d.row(i)[c]);
    }
    const bool constant = hi == lo;
    if (constant) {
      d.warnings.push_back("column '" + cols[c].name +
                           "' is constant; normalized to 0");
    }
    for (std::size_t i = 0; i < d.size(); ++i) {
      double& v = d.mutable_row(i)[c];
      v = constant ? 0.0 : (v - lo) / (hi - lo);
    }
  }
  return d;
}

Dataset load_csv(const std::string& path, const std::vector<ColumnSpec>& cols) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("load_csv: cannot open '" + path + "'");
  return load_csv(in, cols);
}

}  // namespace umpc
