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

#include "hsd/data.hpp"

#include <charconv>
#include <fstream>
#include <numeric>
#include <ostream>

#include "hsd/csv.hpp"
#include "hsd/errors.hpp"
#include "hsd/rng.hpp"

namespace hsd {

std::vector<DatasetManifest> register_builtin_schemas() {
  return {
      {"english",
       LabelSchema("english", {"none", "racism", "sexism"}),
       15777,
       {{"none", 10841}, {"racism", 3017}, {"sexism", 1919}}},
      {"italian",
       LabelSchema("italian", {"non-hate", "hate"}),
       3000,
       {{"non-hate", 972}, {"hate", 2028}}},
      {"german",
       LabelSchema("german", {"non-hate", "hate"}),
       3031,
       {{"non-hate", 2061}, {"hate", 970}}},
      {"bengali",
       LabelSchema("bengali", {"geopolitical", "personal", "political", "religious", "abusive"}),
       3419,
       {{"geopolitical", 1379},
        {"personal", 629},
        {"political", 592},
        {"religious", 502},
        {"abusive", 316}}},
  };
}

std::optional<DatasetManifest> find_builtin_manifest(std::string_view name) {
  for (auto& m : register_builtin_schemas()) {
    if (m.name == name) return m;
  }
  return std::nullopt;
}

namespace {

std::size_t parse_count(const std::string& source, const std::string& key,
                        const std::string& value) {
  std::size_t v = 0;
  const auto r = std::from_chars(value.data(), value.data() + value.size(), v);
  if (r.ec != std::errc() || r.ptr != value.data() + value.size()) {
    throw DataError(source + ": invalid count for '" + key + "': '" + value + "'");
  }
  return v;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto end = comma == std::string::npos ? text.size() : comma;
    std::string item = text.substr(pos, end - pos);
    const auto first = item.find_first_not_of(' ');
    const auto last = item.find_last_not_of(' ');
    items.push_back(first == std::string::npos ? "" : item.substr(first, last - first + 1));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return items;
}

}  // namespace

DatasetManifest manifest_from_entries(const kv::Entries& entries, const std::string& source) {
  DatasetManifest m;
  m.name = entries.require("name");
  m.schema = LabelSchema(m.name, split_list(entries.require("classes")));
  if (auto total = entries.get("total")) m.expected_total = parse_count(source, "total", *total);
  for (const auto& [key, value] : entries.items()) {
    if (key.rfind("count.", 0) != 0) continue;
    const std::string cls = key.substr(6);
    if (!m.schema.index_of(cls)) {
      throw DataError(source + ": count for unknown class '" + cls + "'");
    }
    m.expected_per_class.emplace_back(cls, parse_count(source, key, value));
  }
  return m;
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  return manifest_from_entries(kv::read_file(path), path.string());
}

DatasetManifest resolve_manifest(const std::string& name_or_path) {
  if (auto builtin = find_builtin_manifest(name_or_path)) return *builtin;
  if (std::filesystem::exists(name_or_path)) return load_manifest(name_or_path);
  throw DataError("unknown dataset manifest '" + name_or_path +
                  "' (not a built-in name or an existing file)");
}

std::vector<std::string> check_counts(std::span<const RawTweet> rows,
                                      const DatasetManifest& manifest) {
  std::vector<std::string> warnings;
  auto mismatch = [&](const std::string& what, std::size_t expected, std::size_t found) {
    if (expected == found) return;
    const auto delta = static_cast<long long>(found) - static_cast<long long>(expected);
    warnings.push_back(manifest.name + ": " + what + " expected " + std::to_string(expected) +
                       ", found " + std::to_string(found) + " (delta " +
                       (delta > 0 ? "+" : "") + std::to_string(delta) + ")");
  };
  if (manifest.expected_total) mismatch("total rows", *manifest.expected_total, rows.size());
  for (const auto& [cls, expected] : manifest.expected_per_class) {
    std::size_t found = 0;
    for (const auto& row : rows) found += row.label == cls ? 1 : 0;
    mismatch("class '" + cls + "'", expected, found);
  }
  return warnings;
}

LoadedDataset load_csv(std::istream& in, const std::string& source,
                       const DatasetManifest& manifest) {
  const csv::Table table = csv::read(in, source);
  const auto text_col = table.column("text");
  const auto label_col = table.column("label");
  if (!text_col) throw DataError(source + ": missing column 'text'");
  if (!label_col) throw DataError(source + ": missing column 'label'");
  LoadedDataset data;
  data.rows.reserve(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& rec = table.rows[i];
    if (!manifest.schema.index_of(rec[*label_col])) {
      throw UnknownLabelError(i + 1, rec[*label_col]);
    }
    data.rows.push_back(RawTweet{rec[*text_col], rec[*label_col]});
  }
  data.warnings = check_counts(data.rows, manifest);
  return data;
}

LoadedDataset load_csv(const std::filesystem::path& path, const DatasetManifest& manifest) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return load_csv(in, path.string(), manifest);
}

void write_dataset_csv(std::ostream& out, std::span<const CleanTweet> rows) {
  out << "text,label\n";
  for (const auto& row : rows) {
    const std::string fields[] = {row.text, row.label};
    csv::write_row(out, fields);
  }
}

SplitSizes split_sizes(std::size_t n) {
  SplitSizes s;
  s.train = (3 * n + 2) / 5;  // round(0.6 n); 3n/5 never ends in .5
  s.val = n / 5;
  s.test = n - s.train - s.val;
  return s;
}

namespace {

void take(std::span<const CleanTweet> rows, std::span<const std::size_t> order, SplitPart& part) {
  for (std::size_t idx : order) {
    part.rows.push_back(rows[idx]);
    part.source_rows.push_back(idx);
  }
}

void partition(std::span<const CleanTweet> rows, std::span<const std::size_t> order,
               DatasetSplit& split) {
  const SplitSizes sizes = split_sizes(order.size());
  take(rows, order.subspan(0, sizes.train), split.train);
  take(rows, order.subspan(sizes.train, sizes.val), split.val);
  take(rows, order.subspan(sizes.train + sizes.val), split.test);
}

}  // namespace

DatasetSplit split_dataset(std::span<const CleanTweet> rows, std::uint64_t seed, bool stratify) {
  if (rows.size() < 5) {
    throw DataError("too few rows to split (" + std::to_string(rows.size()) + " < 5)");
  }
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(order));

  DatasetSplit split;
  split.seed = seed;
  if (!stratify) {
    partition(rows, order, split);
    return split;
  }
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t idx : order) {
    std::size_t g = 0;
    while (g < labels.size() && labels[g] != rows[idx].label) ++g;
    if (g == labels.size()) {
      labels.push_back(rows[idx].label);
      groups.emplace_back();
    }
    groups[g].push_back(idx);
  }
  for (const auto& group : groups) partition(rows, group, split);
  return split;
}

}  // namespace hsd
