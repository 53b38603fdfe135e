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

#ifndef HSD_DATA_HPP_
#define HSD_DATA_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hsd/keyvalue.hpp"
#include "hsd/preprocess.hpp"
#include "hsd/tokenize.hpp"

namespace hsd {

struct DatasetManifest {
  std::string name;
  LabelSchema schema;
  std::optional<std::size_t> expected_total;
  std::vector<std::pair<std::string, std::size_t>> expected_per_class;
};

// english, italian, german, bengali. English follows the dataset section
// counts (15,777 tweets); the introduction's 16,000 / 10,884 / 1,924 /
// 3,082 figures disagree and are not used.
std::vector<DatasetManifest> register_builtin_schemas();
std::optional<DatasetManifest> find_builtin_manifest(std::string_view name);

// Keys: name, classes (comma-separated), optional total, optional
// count.<class>.
DatasetManifest manifest_from_entries(const kv::Entries& entries, const std::string& source);
DatasetManifest load_manifest(const std::filesystem::path& path);

// Resolves a built-in name or a manifest file path.
DatasetManifest resolve_manifest(const std::string& name_or_path);

struct LoadedDataset {
  std::vector<RawTweet> rows;
  std::vector<std::string> warnings;  // expected-count mismatches
};

// Reads a `text,label` CSV (extra columns are ignored). Unknown labels raise
// UnknownLabelError with the 1-based data row.
LoadedDataset load_csv(std::istream& in, const std::string& source,
                       const DatasetManifest& manifest);
LoadedDataset load_csv(const std::filesystem::path& path, const DatasetManifest& manifest);

std::vector<std::string> check_counts(std::span<const RawTweet> rows,
                                      const DatasetManifest& manifest);

// Writes header `text,label` and one row per tweet.
void write_dataset_csv(std::ostream& out, std::span<const CleanTweet> rows);

struct SplitSizes {
  std::size_t train = 0;
  std::size_t val = 0;
  std::size_t test = 0;
};

// train = round(0.6 n), val = floor(0.2 n), test = the rest.
SplitSizes split_sizes(std::size_t n);

struct SplitPart {
  std::vector<CleanTweet> rows;
  std::vector<std::size_t> source_rows;  // positions in the input
};

struct DatasetSplit {
  SplitPart train;
  SplitPart val;
  SplitPart test;
  std::uint64_t seed = 0;
};

// Seeded shuffle followed by a 60/20/20 partition. With `stratify`, each
// label is split separately and the parts concatenated in label order of
// first appearance. Throws DataError when n < 5.
DatasetSplit split_dataset(std::span<const CleanTweet> rows, std::uint64_t seed,
                           bool stratify = false);

}  // namespace hsd

#endif  // HSD_DATA_HPP_
