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

#ifndef HSD_CSV_HPP_
#define HSD_CSV_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// RFC 4180 CSV: quoted fields, doubled quotes, embedded line breaks. Both
// CRLF and LF record separators are accepted; LF is written.
namespace hsd::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  // 1-based physical line on which each record starts.
  std::vector<std::size_t> lines;

  std::optional<std::size_t> column(std::string_view name) const;
};

// The first record is the header. Every record must have as many fields as
// the header; violations raise ParseError naming `source` and the line.
Table read(std::istream& in, const std::string& source);
Table read_file(const std::filesystem::path& path);

std::string escape(std::string_view field);
void write_row(std::ostream& out, std::span<const std::string> fields);

}  // namespace hsd::csv

#endif  // HSD_CSV_HPP_
