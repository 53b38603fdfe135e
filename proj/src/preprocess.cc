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

#include "hsd/preprocess.hpp"

#include <algorithm>
#include <array>

#include "hsd/errors.hpp"
#include "hsd/utf8.hpp"

namespace hsd {

namespace {

constexpr EmojiEntry kEmojiTable[] = {
#include "emoji_table.inc"
};

char32_t ascii_lower(char32_t cp) {
  return (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
}

bool starts_with_ci(const std::u32string& s, std::size_t pos,
                    std::u32string_view prefix) {
  if (pos + prefix.size() > s.size()) return false;
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    if (ascii_lower(s[pos + k]) != prefix[k]) return false;
  }
  return true;
}

std::size_t url_prefix_length(const std::u32string& s, std::size_t pos) {
  for (std::u32string_view scheme : {U"https://", U"http://", U"www."}) {
    if (starts_with_ci(s, pos, scheme)) return scheme.size();
  }
  return 0;
}

std::size_t skip_to_space(const std::u32string& s, std::size_t pos) {
  while (pos < s.size() && !utf8::is_space(s[pos])) ++pos;
  return pos;
}

void append_word(std::u32string& out, std::string_view word) {
  out.push_back(U' ');
  for (char ch : word) out.push_back(static_cast<unsigned char>(ch));
  out.push_back(U' ');
}

bool is_joiner_or_selector(char32_t cp) {
  return cp == 0x200D || cp == 0xFE0E || cp == 0xFE0F;
}

// Mentions, then URLs, then (rich only) emoji; each stage is a separate
// pass so the ordering matches the documented pipeline.
std::string run_pipeline(std::string_view raw, bool rich) {
  std::u32string text = utf8::decode(raw);
  std::u32string next;
  next.reserve(text.size());

  for (std::size_t i = 0; i < text.size();) {
    if (text[i] == U'@' && i + 1 < text.size() && !utf8::is_space(text[i + 1])) {
      i = skip_to_space(text, i + 1);
      if (rich) append_word(next, "username");
    } else {
      next.push_back(text[i++]);
    }
  }
  text.swap(next);
  next.clear();

  for (std::size_t i = 0; i < text.size();) {
    if (url_prefix_length(text, i) > 0) {
      i = skip_to_space(text, i);
      if (rich) append_word(next, "url");
    } else {
      next.push_back(text[i++]);
    }
  }
  text.swap(next);
  next.clear();

  if (rich) {
    for (char32_t cp : text) {
      if (auto name = emoji_name(cp)) {
        append_word(next, *name);
      } else if (!is_joiner_or_selector(cp)) {
        next.push_back(cp);
      }
    }
    text.swap(next);
    next.clear();
  }

  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char32_t cp : text) {
    if (utf8::is_space(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    utf8::append(out, cp);
  }
  return out;
}

}  // namespace

std::string_view to_string(CleanMode mode) {
  return mode == CleanMode::kRich ? "rich" : "basic";
}

CleanMode parse_clean_mode(std::string_view name) {
  if (name == "basic") return CleanMode::kBasic;
  if (name == "rich") return CleanMode::kRich;
  throw UsageError("unknown clean mode '" + std::string(name) +
                   "' (expected basic or rich)");
}

std::string clean_basic(std::string_view raw) { return run_pipeline(raw, false); }

std::string clean_rich(std::string_view raw) { return run_pipeline(raw, true); }

std::string clean(std::string_view raw, CleanMode mode) {
  return run_pipeline(raw, mode == CleanMode::kRich);
}

CleanedDataset clean_dataset(std::span<const RawTweet> rows, CleanMode mode) {
  if (rows.empty()) throw DataError("clean_dataset: no rows");
  CleanedDataset result;
  result.rows.resize(rows.size());
  const auto n = static_cast<std::ptrdiff_t>(rows.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    result.rows[i] = CleanTweet{clean(rows[i].text, mode), rows[i].label};
  }
  result.summary.rows = rows.size();
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    if (result.rows[i].text.empty()) result.summary.emptied.push_back(i);
  }
  return result;
}

std::span<const EmojiEntry> emoji_table() { return kEmojiTable; }

std::optional<std::string_view> emoji_name(char32_t cp) {
  if (cp < 0x80) return std::nullopt;
  const auto it = std::lower_bound(
      std::begin(kEmojiTable), std::end(kEmojiTable), cp,
      [](const EmojiEntry& e, char32_t c) { return e.codepoint < c; });
  if (it == std::end(kEmojiTable) || it->codepoint != cp) return std::nullopt;
  return it->name;
}

}  // namespace hsd
