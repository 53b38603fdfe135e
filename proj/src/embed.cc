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

#include "hsd/embed.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <string_view>

#include "hsd/errors.hpp"
#include "hsd/rng.hpp"

namespace hsd {

bool WordVectors::insert(const std::string& word, std::span<const double> values) {
  const auto [it, inserted] = index_.try_emplace(word, words_.size());
  if (inserted) {
    words_.push_back(word);
    values_.insert(values_.end(), values.begin(), values.end());
  } else {
    std::copy(values.begin(), values.end(), values_.begin() + it->second * dim_);
  }
  return inserted;
}

const double* WordVectors::find(const std::string& word) const {
  const auto it = index_.find(word);
  return it == index_.end() ? nullptr : values_.data() + it->second * dim_;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const auto next = line.find(' ', pos);
    const auto end = next == std::string_view::npos ? line.size() : next;
    if (end > pos) fields.push_back(line.substr(pos, end - pos));
    pos = end + 1;
  }
  return fields;
}

bool parse_size(std::string_view s, std::size_t& out) {
  const auto r = std::from_chars(s.data(), s.data() + s.size(), out);
  return r.ec == std::errc() && r.ptr == s.data() + s.size();
}

}  // namespace

WordVectors parse_vec(std::istream& in, const std::string& source) {
  WordVectors vectors;
  bool have_dim = false;
  std::vector<double> row;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    while (!view.empty() && (view.back() == '\r' || view.back() == ' ')) view.remove_suffix(1);
    if (view.empty()) continue;
    const auto fields = split_fields(view);

    if (line_no == 1 && fields.size() == 2) {
      std::size_t count = 0;  // informational only
      std::size_t dim = 0;
      if (parse_size(fields[0], count) && parse_size(fields[1], dim) && dim > 0) {
        vectors = WordVectors(dim);
        have_dim = true;
        continue;
      }
    }

    const std::size_t values = fields.size() - 1;
    if (!have_dim) {
      if (values == 0) throw DimensionMismatchError(source, line_no, "row has no values");
      vectors = WordVectors(values);
      have_dim = true;
    }
    if (values != vectors.dim()) {
      throw DimensionMismatchError(source, line_no,
                                   "expected " + std::to_string(vectors.dim()) +
                                       " values, found " + std::to_string(values));
    }
    row.resize(values);
    for (std::size_t k = 0; k < values; ++k) {
      const auto f = fields[k + 1];
      const auto r = std::from_chars(f.data(), f.data() + f.size(), row[k]);
      if (r.ec != std::errc() || r.ptr != f.data() + f.size() || !std::isfinite(row[k])) {
        throw MalformedNumberError(source, line_no, "malformed number '" + std::string(f) + "'");
      }
    }
    if (!vectors.insert(std::string(fields[0]), row)) ++vectors.duplicates;
  }
  return vectors;
}

WordVectors load_vec_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return parse_vec(in, path.string());
}

void write_vec(std::ostream& out, const WordVectors& vectors) {
  out << vectors.size() << ' ' << vectors.dim() << '\n';
  char buf[64];
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    out << vectors.words()[i];
    for (double v : vectors.vector(i)) {
      const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
      out << ' ' << std::string_view(buf, r.ptr - buf);
    }
    out << '\n';
  }
}

EmbeddingMatrix build_matrix(const Vocabulary& vocab, const WordVectors& vectors) {
  EmbeddingMatrix m;
  m.rows = vocab.size() + 1;
  m.dim = vectors.dim();
  m.values.assign(m.rows * m.dim, 0.0);
  for (std::size_t i = 1; i <= vocab.size(); ++i) {
    const auto& word = vocab.word_at(static_cast<std::int32_t>(i));
    if (const double* v = vectors.find(word)) {
      std::copy_n(v, m.dim, m.values.begin() + i * m.dim);
    } else {
      m.words_not_found.push_back(word);
    }
  }
  m.coverage = vocab.empty() ? 1.0
                             : static_cast<double>(vocab.size() - m.words_not_found.size()) /
                                   static_cast<double>(vocab.size());
  return m;
}

EmbeddingMatrix random_matrix(const Vocabulary& vocab, std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw UsageError("embedding dimension must be >= 1");
  EmbeddingMatrix m;
  m.rows = vocab.size() + 1;
  m.dim = dim;
  m.values.assign(m.rows * dim, 0.0);
  Rng rng(seed);
  for (std::size_t k = dim; k < m.values.size(); ++k) m.values[k] = rng.uniform(-0.05, 0.05);
  return m;
}

}  // namespace hsd
