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

#include "hsd/tokenize.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "hsd/errors.hpp"
#include "hsd/utf8.hpp"

namespace hsd {

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  auto flush = [&]() {
    if (!current.empty()) words.push_back(std::move(current));
    current.clear();
  };
  for (char32_t cp : utf8::decode(text)) {
    if (utf8::is_space(cp) ||
        (cp < 0x80 && kTokenFilters.find(static_cast<char>(cp)) != std::string_view::npos)) {
      flush();
    } else {
      utf8::append(current, utf8::to_lower(cp));
    }
  }
  flush();
  return words;
}

Vocabulary Vocabulary::fit(std::span<const std::string> texts, std::size_t max_words) {
  struct Stat {
    std::uint64_t count = 0;
    std::size_t first_seen = 0;
  };
  std::unordered_map<std::string, Stat> stats;
  std::vector<std::string> order;
  for (const auto& text : texts) {
    for (auto& word : split_words(text)) {
      auto [it, inserted] = stats.try_emplace(word);
      if (inserted) {
        it->second.first_seen = order.size();
        order.push_back(std::move(word));
      }
      ++it->second.count;
    }
  }
  if (order.empty()) throw EmptyCorpusError();

  std::stable_sort(order.begin(), order.end(),
                   [&](const std::string& a, const std::string& b) {
                     return stats[a].count > stats[b].count;
                   });
  order.resize(std::min(order.size(), max_words));

  Vocabulary vocab;
  vocab.max_words_ = max_words;
  vocab.words_ = std::move(order);
  vocab.counts_.reserve(vocab.words_.size());
  for (std::size_t i = 0; i < vocab.words_.size(); ++i) {
    vocab.counts_.push_back(stats[vocab.words_[i]].count);
    vocab.index_.emplace(vocab.words_[i], static_cast<std::int32_t>(i + 1));
  }
  return vocab;
}

void Vocabulary::save(std::ostream& out) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    out << words_[i] << '\t' << (i + 1) << '\t' << counts_[i] << '\n';
  }
}

void Vocabulary::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  save(out);
}

Vocabulary Vocabulary::load(std::istream& in, const std::string& source) {
  Vocabulary vocab;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) throw ParseError(source, line_no, "expected word<TAB>index<TAB>count");
    std::int64_t index = 0;
    std::uint64_t count = 0;
    const char* b = line.data();
    auto r1 = std::from_chars(b + t1 + 1, b + t2, index);
    auto r2 = std::from_chars(b + t2 + 1, b + line.size(), count);
    if (r1.ec != std::errc() || r1.ptr != b + t2 || r2.ec != std::errc() ||
        r2.ptr != b + line.size()) {
      throw ParseError(source, line_no, "malformed index or count");
    }
    if (index != static_cast<std::int64_t>(vocab.words_.size()) + 1) {
      throw ParseError(source, line_no, "indices must be contiguous from 1");
    }
    std::string word = line.substr(0, t1);
    if (!vocab.index_.emplace(word, static_cast<std::int32_t>(index)).second) {
      throw ParseError(source, line_no, "duplicate word '" + word + "'");
    }
    vocab.words_.push_back(std::move(word));
    vocab.counts_.push_back(count);
  }
  vocab.max_words_ = vocab.words_.size();
  return vocab;
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return load(in, path.string());
}

std::int32_t Vocabulary::index_of(const std::string& word) const {
  const auto it = index_.find(word);
  return it == index_.end() ? 0 : it->second;
}

std::uint64_t Vocabulary::fingerprint() const {
  std::ostringstream out;
  save(out);
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : out.str()) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::vector<std::vector<std::int32_t>> texts_to_sequences(
    const Vocabulary& vocab, std::span<const std::string> texts) {
  std::vector<std::vector<std::int32_t>> seqs(texts.size());
  const auto n = static_cast<std::ptrdiff_t>(texts.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    for (const auto& word : split_words(texts[i])) {
      if (const auto id = vocab.index_of(word); id != 0) seqs[i].push_back(id);
    }
  }
  return seqs;
}

SequenceBatch pad_sequences(std::span<const std::vector<std::int32_t>> seqs,
                            std::size_t max_len) {
  if (max_len == 0) throw UsageError("pad_sequences: max_len must be >= 1");
  SequenceBatch batch;
  batch.rows = seqs.size();
  batch.max_len = max_len;
  batch.ids.assign(seqs.size() * max_len, 0);
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    const std::size_t len = std::min(seqs[i].size(), max_len);
    std::copy_n(seqs[i].begin(), len, batch.ids.begin() + i * max_len);
  }
  return batch;
}

LabelSchema::LabelSchema(std::string name, std::vector<std::string> classes)
    : name_(std::move(name)), classes_(std::move(classes)) {
  if (classes_.empty()) throw DataError("label schema '" + name_ + "' has no classes");
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (classes_[i].empty()) throw DataError("label schema '" + name_ + "' has an empty class name");
    for (std::size_t j = 0; j < i; ++j) {
      if (classes_[i] == classes_[j]) {
        throw DataError("label schema '" + name_ + "' repeats class '" + classes_[i] + "'");
      }
    }
  }
}

std::optional<std::size_t> LabelSchema::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (classes_[i] == label) return i;
  }
  return std::nullopt;
}

OneHotLabels one_hot_indices(std::span<const std::size_t> indices, std::size_t classes) {
  OneHotLabels out;
  out.rows = indices.size();
  out.classes = classes;
  out.values.assign(indices.size() * classes, 0.0);
  out.indices.assign(indices.begin(), indices.end());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= classes) throw DataError("class index out of range");
    out.values[i * classes + indices[i]] = 1.0;
  }
  return out;
}

OneHotLabels one_hot(std::span<const std::string> labels, const LabelSchema& schema) {
  std::vector<std::size_t> indices;
  indices.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto idx = schema.index_of(labels[i]);
    if (!idx) throw UnknownLabelError(i + 1, labels[i]);
    indices.push_back(*idx);
  }
  return one_hot_indices(indices, schema.size());
}

}  // namespace hsd
