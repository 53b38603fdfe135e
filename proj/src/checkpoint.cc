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

#include "hsd/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "hsd/errors.hpp"

namespace hsd {

namespace {

constexpr char kMagic[8] = {'H', 'S', 'D', 'C', 'K', 'P', 'T', '1'};
constexpr std::uint64_t kMaxHeader = 1 << 20;

void put_u64(std::ostream& out, std::uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(bytes, 8);
}

void put_u32(std::ostream& out, std::uint32_t v) {
  char bytes[4];
  for (int i = 0; i < 4; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(bytes, 4);
}

class Reader {
 public:
  Reader(std::istream& in, const std::string& source) : in_(in), source_(source) {}

  void bytes(char* dst, std::size_t n) {
    in_.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) {
      throw DataError(source_ + ": truncated checkpoint");
    }
  }
  std::uint64_t u64() {
    unsigned char b[8];
    bytes(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
  }
  std::uint32_t u32() {
    unsigned char b[4];
    bytes(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return v;
  }

  const std::string& source() const { return source_; }

 private:
  std::istream& in_;
  std::string source_;
};

Tensor read_tensor(Reader& r, const std::string& name, const Tensor& expected) {
  const std::uint32_t rank = r.u32();
  std::vector<std::size_t> shape(rank);
  for (auto& d : shape) d = r.u64();
  if (shape != expected.shape) {
    throw DataError(r.source() + ": tensor '" + name + "' has unexpected shape");
  }
  Tensor t(shape);
  for (double& v : t.data) v = std::bit_cast<double>(r.u64());
  return t;
}

}  // namespace

void save_checkpoint(std::ostream& out, const Checkpoint& checkpoint) {
  kv::Entries header = to_entries(checkpoint.config);
  for (const auto& [k, v] : checkpoint.metadata.items()) {
    if (header.get(k)) throw UsageError("checkpoint metadata key '" + k + "' is reserved");
    header.set(k, v);
  }
  const std::string text = kv::format(header);
  out.write(kMagic, sizeof kMagic);
  put_u64(out, text.size());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  const auto tensors = checkpoint.params.tensors();
  put_u32(out, static_cast<std::uint32_t>(tensors.size()));
  for (const auto& [name, t] : tensors) {
    put_u32(out, static_cast<std::uint32_t>(t->shape.size()));
    for (std::size_t d : t->shape) put_u64(out, d);
    for (double v : t->data) put_u64(out, std::bit_cast<std::uint64_t>(v));
  }
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  save_checkpoint(out, checkpoint);
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

Checkpoint load_checkpoint(std::istream& in, const std::string& source) {
  Reader r(in, source);
  char magic[8];
  r.bytes(magic, 8);
  if (std::memcmp(magic, kMagic, 8) != 0) throw DataError(source + ": not a model checkpoint");
  const std::uint64_t header_len = r.u64();
  if (header_len > kMaxHeader) throw DataError(source + ": checkpoint header too large");
  std::string text(header_len, '\0');
  r.bytes(text.data(), text.size());
  const kv::Entries header = kv::parse(text, source);

  Checkpoint ckpt;
  try {
    ckpt.config = config_from_entries(header);
    ckpt.config.validate();
  } catch (const UsageError& e) {
    throw DataError(source + ": " + e.what());
  }
  std::set<std::string> config_keys;
  const kv::Entries config_entries = to_entries(ckpt.config);
  for (const auto& [k, v] : config_entries.items()) config_keys.insert(k);
  for (const auto& [k, v] : header.items()) {
    if (!config_keys.contains(k)) ckpt.metadata.set(k, v);
  }

  // Build a zero model of the declared shape to validate tensor shapes.
  EmbeddingMatrix shape_only;
  shape_only.rows = ckpt.config.vocab_size + 1;
  shape_only.dim = ckpt.config.embedding_dim;
  shape_only.values.assign(shape_only.rows * shape_only.dim, 0.0);
  ckpt.params = init_params(ckpt.config, shape_only);

  auto tensors = ckpt.params.tensors();
  const std::uint32_t count = r.u32();
  if (count != tensors.size()) throw DataError(source + ": unexpected tensor count");
  for (auto& [name, t] : tensors) *t = read_tensor(r, name, *t);
  return ckpt;
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return load_checkpoint(in, path.string());
}

}  // namespace hsd
