// Copyright 2026 The hsd Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hsd/csv.hpp"

#include <fstream>
#include <iterator>
#include <ostream>

#include "hsd/errors.hpp"

namespace hsd::csv {

std::optional<std::size_t> Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return std::nullopt;
}

namespace {

void tokenize(std::string_view data, const std::string& source, Table& table,
              bool& have_header) {
  std::vector<std::string> record;
  std::string field;
  std::size_t line = 1;
  std::size_t record_line = 1;
  bool in_quotes = false;
  bool field_started = false;
  bool was_quoted = false;

  auto end_record = [&]() {
    record.push_back(std::move(field));
    field.clear();
    const bool blank = record.size() == 1 && record[0].empty() && !was_quoted;
    if (!have_header) {
      table.header = std::move(record);
      have_header = true;
    } else if (blank && table.header.size() > 1) {
      // Blank line; only meaningful as an empty field in 1-column tables.
    } else {
      if (record.size() != table.header.size()) {
        throw ParseError(source, record_line,
                         "expected " + std::to_string(table.header.size()) +
                             " fields, found " + std::to_string(record.size()));
      }
      table.rows.push_back(std::move(record));
      table.lines.push_back(record_line);
    }
    record.clear();
    field_started = false;
    was_quoted = false;
  };

  std::size_t i = 0;
  if (data.substr(0, 3) == "\xEF\xBB\xBF") i = 3;
  for (; i < data.size(); ++i) {
    const char ch = data[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < data.size() && data[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (field_started && !was_quoted) {
          // Bare quote inside an unquoted field is kept literally.
          field.push_back(ch);
          break;
        }
        if (was_quoted) {
          throw ParseError(source, line, "text after closing quote");
        }
        in_quotes = true;
        was_quoted = true;
        field_started = true;
        break;
      case ',':
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
        was_quoted = false;
        break;
      case '\r':
        if (i + 1 < data.size() && data[i + 1] == '\n') break;
        [[fallthrough]];
      case '\n':
        end_record();
        ++line;
        record_line = line;
        break;
      default:
        if (was_quoted) throw ParseError(source, line, "text after closing quote");
        field.push_back(ch);
        field_started = true;
        break;
    }
  }
  if (in_quotes) throw ParseError(source, record_line, "unterminated quoted field");
  if (field_started || !record.empty()) end_record();
}

}  // namespace

Table read(std::istream& in, const std::string& source) {
  const std::string data{std::istreambuf_iterator<char>(in),
                         std::istreambuf_iterator<char>()};
  Table table;
  bool have_header = false;
  tokenize(data, source, table, have_header);
  if (!have_header) throw ParseError(source, 1, "missing header row");
  return table;
}

Table read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return read(in, path.string());
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << escape(fields[i]);
  }
  out << '\n';
}

}  // namespace hsd::csv
