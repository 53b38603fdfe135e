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

#ifndef HSD_TOKENIZE_HPP_
#define HSD_TOKENIZE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hsd {

inline constexpr std::size_t kDefaultMaxWords = 50000;
inline constexpr std::size_t kDefaultMaxLen = 250;

// Characters replaced by a separator before splitting.
inline constexpr std::string_view kTokenFilters = "!\"#$%&()*+,-./:;<=>?@[\\]^_`{|}~";

// Lowercases, replaces every filter character with a space and splits on
// whitespace.
std::vector<std::string> split_words(std::string_view text);

// Word -> index map. Indices run 1..size() in descending corpus frequency,
// ties broken by first occurrence. Index 0 is reserved for padding.
class Vocabulary {
 public:
  Vocabulary() = default;

  // Throws EmptyCorpusError when `texts` contains no token.
  static Vocabulary fit(std::span<const std::string> texts,
                        std::size_t max_words = kDefaultMaxWords);

  // One `word<TAB>index<TAB>count` line per word, sorted by index.
  void save(std::ostream& out) const;
  void save(const std::filesystem::path& path) const;
  static Vocabulary load(std::istream& in, const std::string& source);
  static Vocabulary load(const std::filesystem::path& path);

  // 0 when the word is not indexed.
  std::int32_t index_of(const std::string& word) const;
  const std::string& word_at(std::int32_t index) const { return words_.at(index - 1); }
  std::uint64_t count_at(std::int32_t index) const { return counts_.at(index - 1); }

  std::size_t size() const { return words_.size(); }
  std::size_t max_words() const { return max_words_; }
  bool empty() const { return words_.empty(); }

  // FNV-1a over the serialized form.
  std::uint64_t fingerprint() const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.words_ == b.words_ && a.counts_ == b.counts_;
  }

 private:
  std::size_t max_words_ = kDefaultMaxWords;
  std::vector<std::string> words_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::string, std::int32_t> index_;
};

// Unindexed words are dropped.
std::vector<std::vector<std::int32_t>> texts_to_sequences(
    const Vocabulary& vocab, std::span<const std::string> texts);

// n x max_len id matrix, row-major.
struct SequenceBatch {
  std::size_t rows = 0;
  std::size_t max_len = 0;
  std::vector<std::int32_t> ids;

  std::span<const std::int32_t> row(std::size_t i) const {
    return {ids.data() + i * max_len, max_len};
  }
};

// Post-pads with 0 and truncates to the first `max_len` ids.
SequenceBatch pad_sequences(std::span<const std::vector<std::int32_t>> seqs,
                            std::size_t max_len = kDefaultMaxLen);

class LabelSchema {
 public:
  LabelSchema() = default;
  // Throws DataError on an empty or duplicated class list.
  LabelSchema(std::string name, std::vector<std::string> classes);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& classes() const { return classes_; }
  std::size_t size() const { return classes_.size(); }
  std::optional<std::size_t> index_of(std::string_view label) const;

  friend bool operator==(const LabelSchema&, const LabelSchema&) = default;

 private:
  std::string name_;
  std::vector<std::string> classes_;
};

struct OneHotLabels {
  std::size_t rows = 0;
  std::size_t classes = 0;
  std::vector<double> values;  // rows x classes
  std::vector<std::size_t> indices;

  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * classes, classes};
  }
};

// Throws UnknownLabelError (1-based row) for labels outside the schema.
OneHotLabels one_hot(std::span<const std::string> labels, const LabelSchema& schema);
OneHotLabels one_hot_indices(std::span<const std::size_t> indices, std::size_t classes);

}  // namespace hsd

#endif  // HSD_TOKENIZE_HPP_
