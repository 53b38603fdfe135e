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

#include <gtest/gtest.h>

#include <random>
#include <regex>
#include <set>
#include <sstream>

#include "hsd/errors.hpp"
#include "hsd/preprocess.hpp"
#include "hsd/utf8.hpp"

namespace hsd {
namespace {

TEST(CleanBasic, Examples) {
  EXPECT_EQ(clean_basic("@john check https://t.co/x now"), "check now");
  EXPECT_EQ(clean_basic("hello world"), "hello world");
  EXPECT_EQ(clean_basic("   "), "");
  EXPECT_EQ(clean_basic("@x"), "");
  EXPECT_EQ(clean_basic("see WWW.Example.com and HTTP://A.B ok"), "see and ok");
  EXPECT_EQ(clean_basic("mail a@b.c now"), "mail a now");
  EXPECT_EQ(clean_basic("tabs\tand\nnewlines here"), "tabs and newlines here");
  EXPECT_EQ(clean_basic("😀 stays"), "😀 stays");
}

TEST(CleanRich, Examples) {
  EXPECT_EQ(clean_rich("@john check https://t.co/x 😀"), "username check url grinning_face");
  EXPECT_EQ(clean_rich("no entities here"), "no entities here");
  EXPECT_EQ(clean_rich("@a @b"), "username username");
  EXPECT_EQ(clean_rich("😀"), "grinning_face");
  EXPECT_EQ(clean_rich("love❤️you"), "love red_heart you");
  EXPECT_EQ(clean_rich("Hello World"), "Hello World");
}

TEST(CleanDataset, PreservesOrderAndFlagsEmptied) {
  const std::vector<RawTweet> rows = {{"@x", "hate"}, {"fine text", "non-hate"}};
  const CleanedDataset out = clean_dataset(rows, CleanMode::kBasic);
  ASSERT_EQ(out.rows.size(), 2u);
  EXPECT_EQ(out.rows[0].text, "");
  EXPECT_EQ(out.rows[0].label, "hate");
  EXPECT_EQ(out.rows[1].label, "non-hate");
  EXPECT_EQ(out.summary.rows, 2u);
  EXPECT_EQ(out.summary.emptied, std::vector<std::size_t>{0});

  const CleanedDataset rich = clean_dataset(std::vector<RawTweet>{{"😀", "x"}}, CleanMode::kRich);
  EXPECT_EQ(rich.rows[0].text, "grinning_face");
  EXPECT_THROW(clean_dataset({}, CleanMode::kBasic), DataError);
}

TEST(CleanMode, Parse) {
  EXPECT_EQ(parse_clean_mode("basic"), CleanMode::kBasic);
  EXPECT_EQ(parse_clean_mode("rich"), CleanMode::kRich);
  EXPECT_THROW(parse_clean_mode("fancy"), UsageError);
}

TEST(EmojiTable, NamesAreAsciiWordsAndSorted) {
  const auto table = emoji_table();
  ASSERT_GT(table.size(), 1000u);
  const std::regex word("[a-z0-9_]+");
  for (std::size_t i = 0; i < table.size(); ++i) {
    EXPECT_TRUE(std::regex_match(std::string(table[i].name), word)) << table[i].name;
    if (i > 0) {
      EXPECT_LT(table[i - 1].codepoint, table[i].codepoint);
    }
    EXPECT_EQ(clean_rich(utf8::encode(std::u32string(1, table[i].codepoint))), table[i].name);
  }
  EXPECT_EQ(*emoji_name(0x1F600), "grinning_face");
  EXPECT_FALSE(emoji_name(U'a'));
}

// Random tweets assembled from entity-heavy fragments.
std::string random_tweet(std::mt19937_64& gen) {
  static const std::vector<std::string> pieces = {
      "hello", "World", "@user", "@a_b.c", "http://t.co/x", "HTTPS://X.org/p?q=1",
      "www.site.com", "😀", "🙂", "❤️", "é", "ক্ষ", "Жук", "foo@bar", "wwwx", "http:",
      "x", "#tag", "don't", "👍🏽", "‍", "username", "url"};
  static const std::vector<std::string> gaps = {" ", "  ", "\t", "\n", "", "　"};
  std::string out;
  const std::size_t n = gen() % 9;
  for (std::size_t i = 0; i < n; ++i) {
    out += gaps[gen() % gaps.size()];
    out += pieces[gen() % pieces.size()];
  }
  out += gaps[gen() % gaps.size()];
  return out;
}

bool has_mention(const std::string& s) {
  const std::u32string cps = utf8::decode(s);
  for (std::size_t i = 0; i + 1 < cps.size(); ++i) {
    if (cps[i] == U'@' && !utf8::is_space(cps[i + 1])) return true;
  }
  return false;
}

bool has_url(const std::string& s) {
  std::string lower;
  for (char c : s) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return lower.find("http://") != std::string::npos ||
         lower.find("https://") != std::string::npos || lower.find("www.") != std::string::npos;
}

bool whitespace_normal(const std::string& s) {
  const std::u32string cps = utf8::decode(s);
  if (cps.empty()) return true;
  if (utf8::is_space(cps.front()) || utf8::is_space(cps.back())) return false;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (utf8::is_space(cps[i]) && cps[i] != U' ') return false;
    if (i > 0 && cps[i] == U' ' && cps[i - 1] == U' ') return false;
  }
  return true;
}

TEST(CleanProperties, IdempotentAndEntityFree) {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::string raw = random_tweet(gen);
    for (CleanMode mode : {CleanMode::kBasic, CleanMode::kRich}) {
      const std::string once = clean(raw, mode);
      EXPECT_EQ(clean(once, mode), once) << raw;
      EXPECT_FALSE(has_mention(once)) << raw;
      EXPECT_FALSE(has_url(once)) << raw;
      EXPECT_TRUE(whitespace_normal(once)) << raw;
    }
  }
}

std::vector<std::string> split_ascii_space(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

TEST(CleanProperties, BasicKeepsOnlyPlainInputTokens) {
  std::mt19937_64 gen(99);
  const std::vector<std::string> plain = {"hello", "World", "x", "#tag", "😀", "é", "wwwx"};
  const std::vector<std::string> entities = {"@user", "@x.y", "http://a.b/c", "https://q",
                                             "www.z.org", "HTTP://UP"};
  for (int trial = 0; trial < 1000; ++trial) {
    std::string raw;
    std::multiset<std::string> kept;
    const std::size_t n = gen() % 8;
    for (std::size_t i = 0; i < n; ++i) {
      if (gen() % 2 == 0) {
        const auto& w = plain[gen() % plain.size()];
        kept.insert(w);
        raw += w;
      } else {
        raw += entities[gen() % entities.size()];
      }
      raw += gen() % 3 == 0 ? "  " : " ";
    }
    const auto out = split_ascii_space(clean_basic(raw));
    EXPECT_EQ(std::multiset<std::string>(out.begin(), out.end()), kept) << raw;
  }
}

}  // namespace
}  // namespace hsd
