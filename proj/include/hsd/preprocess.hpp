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

#ifndef HSD_PREPROCESS_HPP_
#define HSD_PREPROCESS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hsd {

enum class CleanMode { kBasic, kRich };

std::string_view to_string(CleanMode mode);
// Accepts "basic" or "rich"; anything else is a UsageError.
CleanMode parse_clean_mode(std::string_view name);

struct RawTweet {
  std::string text;
  std::string label;
};

struct CleanTweet {
  std::string text;
  std::string label;
};

// Deletes @mentions and URLs, collapses whitespace runs and trims.
//
// A mention is '@' followed by one or more non-space characters; a URL is
// "http://", "https://" or "www." (ASCII case-insensitive) up to the next
// whitespace. Both are matched anywhere, including mid-token.
std::string clean_basic(std::string_view raw);

// Replaces mentions with "username", URLs with "url" and each emoji
// codepoint with its short name, then collapses whitespace. Variation
// selectors and zero-width joiners are dropped.
std::string clean_rich(std::string_view raw);

std::string clean(std::string_view raw, CleanMode mode);

struct CleanSummary {
  std::size_t rows = 0;
  // 0-based indices of rows whose text became empty.
  std::vector<std::size_t> emptied;
};

struct CleanedDataset {
  std::vector<CleanTweet> rows;
  CleanSummary summary;
};

// Order and labels are preserved; emptied rows are kept and listed in the
// summary. Throws DataError on an empty input.
CleanedDataset clean_dataset(std::span<const RawTweet> rows, CleanMode mode);

struct EmojiEntry {
  char32_t codepoint;
  std::string_view name;
};

// Sorted by codepoint.
std::span<const EmojiEntry> emoji_table();
std::optional<std::string_view> emoji_name(char32_t cp);

}  // namespace hsd

#endif  // HSD_PREPROCESS_HPP_
