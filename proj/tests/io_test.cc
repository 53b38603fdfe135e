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
#include <sstream>

#include "hsd/csv.hpp"
#include "hsd/errors.hpp"
#include "hsd/keyvalue.hpp"
#include "hsd/utf8.hpp"

namespace hsd {
namespace {

TEST(Utf8, RoundTripsMixedScripts) {
  const std::string text = "abc é Ж ক 😀";
  EXPECT_EQ(utf8::encode(utf8::decode(text)), text);
  EXPECT_EQ(utf8::decode("😀").size(), 1u);
}

TEST(Utf8, InvalidBytesBecomeReplacement) {
  const std::u32string cps = utf8::decode("a\xff" "b");
  ASSERT_EQ(cps.size(), 3u);
  EXPECT_EQ(cps[1], utf8::kReplacement);
}

TEST(Utf8, LowercaseAndSpaces) {
  EXPECT_EQ(utf8::to_lower(U'A'), U'a');
  EXPECT_EQ(utf8::to_lower(U'Ж'), U'ж');
  EXPECT_EQ(utf8::to_lower(U'Σ'), U'σ');
  EXPECT_EQ(utf8::to_lower(U'ক'), U'ক');
  EXPECT_TRUE(utf8::is_space(U' '));
  EXPECT_TRUE(utf8::is_space(U'\t'));
  EXPECT_FALSE(utf8::is_space(U'x'));
}

TEST(Csv, ParsesQuotedFieldsAndCrlf) {
  std::istringstream in("text,label\r\n\"a, \"\"quoted\"\"\nline\",hate\r\nplain,none\r\n");
  const csv::Table t = csv::read(in, "mem");
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][0], "a, \"quoted\"\nline");
  EXPECT_EQ(t.rows[1][1], "none");
  EXPECT_EQ(t.lines[1], 4u);
  EXPECT_EQ(*t.column("label"), 1u);
  EXPECT_FALSE(t.column("missing"));
}

TEST(Csv, FieldCountMismatchNamesLine) {
  std::istringstream in("text,label\nok,x\nbroken\n");
  try {
    csv::read(in, "bad.csv");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("bad.csv:3"), std::string::npos);
  }
}

TEST(Csv, StripsBomAndSkipsBlankLines) {
  std::istringstream in("\xEF\xBB\xBFtext,label\n\nx,y\n");
  const csv::Table t = csv::read(in, "mem");
  EXPECT_EQ(t.header[0], "text");
  EXPECT_EQ(t.rows.size(), 1u);
}

TEST(Csv, WriteReadRoundTripRandomFields) {
  std::mt19937_64 gen(7);
  const std::string alphabet = "ab ,\"\n\r\txé";
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<std::string>> rows;
    std::ostringstream out;
    const std::vector<std::string> header = {"text", "label"};
    csv::write_row(out, header);
    for (int r = 0; r < 5; ++r) {
      std::vector<std::string> row;
      for (int c = 0; c < 2; ++c) {
        std::string f;
        const std::size_t n = gen() % 8;
        for (std::size_t i = 0; i < n; ++i) f += alphabet[gen() % alphabet.size()];
        row.push_back(f);
      }
      csv::write_row(out, row);
      rows.push_back(row);
    }
    std::istringstream in(out.str());
    const csv::Table t = csv::read(in, "mem");
    ASSERT_EQ(t.rows, rows) << out.str();
  }
}

TEST(KeyValue, ParsesCommentsAndTrims) {
  const kv::Entries e = kv::parse("# run\n arch = bilstm \n\nseed=3\n", "cfg");
  EXPECT_EQ(*e.get("arch"), "bilstm");
  EXPECT_EQ(e.require("seed"), "3");
  EXPECT_FALSE(e.get("missing"));
  EXPECT_THROW(e.require("missing"), DataError);
}

TEST(KeyValue, RejectsDuplicatesAndMissingEquals) {
  EXPECT_THROW(kv::parse("a=1\na=2\n", "cfg"), DataError);
  EXPECT_THROW(kv::parse("novalue\n", "cfg"), DataError);
}

TEST(KeyValue, FormatRoundTrip) {
  kv::Entries e;
  e.set("b", "2");
  e.set("a", "x y");
  const kv::Entries back = kv::parse(kv::format(e), "mem");
  EXPECT_EQ(back.items(), e.items());
}

}  // namespace
}  // namespace hsd
