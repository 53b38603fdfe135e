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

#ifndef HSD_EMBED_HPP_
#define HSD_EMBED_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hsd/tokenize.hpp"

namespace hsd {

// Pretrained vectors in file order. All vectors share `dim`.
class WordVectors {
 public:
  explicit WordVectors(std::size_t dim = 0) : dim_(dim) {}

  // Replaces the vector when the word already exists; returns false then.
  bool insert(const std::string& word, std::span<const double> values);
  const double* find(const std::string& word) const;

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return words_.size(); }
  const std::vector<std::string>& words() const { return words_; }
  std::span<const double> vector(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }

  // Number of duplicate words seen while parsing (last occurrence wins).
  std::size_t duplicates = 0;

 private:
  std::size_t dim_;
  std::vector<std::string> words_;
  std::vector<double> values_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Textual .vec format: optional `count dim` header line, then
// `word v1 ... v_dim` per line. Without a header the dimension is taken from
// the first row.
WordVectors parse_vec(std::istream& in, const std::string& source);
WordVectors load_vec_file(const std::filesystem::path& path);

// Writes the header and every value with 17 significant digits.
void write_vec(std::ostream& out, const WordVectors& vectors);

struct EmbeddingMatrix {
  std::size_t rows = 0;  // vocabulary size + 1
  std::size_t dim = 0;
  std::vector<double> values;
  std::vector<std::string> words_not_found;  // in vocabulary index order
  double coverage = 1.0;

  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * dim, dim};
  }
};

// Row index(w) holds the pretrained vector of w; row 0 and rows of words
// missing from `vectors` stay zero.
EmbeddingMatrix build_matrix(const Vocabulary& vocab, const WordVectors& vectors);

// Rows 1..V drawn uniformly from [-0.05, 0.05].
EmbeddingMatrix random_matrix(const Vocabulary& vocab, std::size_t dim, std::uint64_t seed);

}  // namespace hsd

#endif  // HSD_EMBED_HPP_
