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

#include "hsd/keyvalue.hpp"

#include <fstream>
#include <iterator>

#include "hsd/errors.hpp"

namespace hsd::kv {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

void Entries::set(std::string key, std::string value) {
  for (auto& [k, v] : items_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  items_.emplace_back(std::move(key), std::move(value));
}

std::optional<std::string> Entries::get(std::string_view key) const {
  for (const auto& [k, v] : items_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

const std::string& Entries::require(std::string_view key) const {
  for (const auto& [k, v] : items_) {
    if (k == key) return v;
  }
  throw DataError("missing required key '" + std::string(key) + "'");
}

Entries parse(std::string_view text, const std::string& source) {
  Entries entries;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    const std::string_view line =
        trim(text.substr(0, nl == std::string_view::npos ? text.size() : nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(source, line_no, "expected key=value");
    }
    std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ParseError(source, line_no, "empty key");
    if (entries.get(key)) throw ParseError(source, line_no, "duplicate key '" + key + "'");
    entries.set(std::move(key), std::string(trim(line.substr(eq + 1))));
  }
  return entries;
}

Entries read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  const std::string text{std::istreambuf_iterator<char>(in),
                         std::istreambuf_iterator<char>()};
  return parse(text, path.string());
}

std::string format(const Entries& entries) {
  std::string out;
  for (const auto& [k, v] : entries.items()) {
    out += k;
    out += '=';
    out += v;
    out += '\n';
  }
  return out;
}

}  // namespace hsd::kv
