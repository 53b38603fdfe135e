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

#ifndef HSD_CHECKPOINT_HPP_
#define HSD_CHECKPOINT_HPP_

#include <filesystem>
#include <iosfwd>

#include "hsd/keyvalue.hpp"
#include "hsd/model.hpp"

namespace hsd {

// Single-file model snapshot:
//
//   magic     8 bytes  "HSDCKPT1"
//   u64       header length in bytes
//   header    UTF-8 key=value lines (model config, then metadata)
//   u32       tensor count
//   per tensor, in ModelParams declaration order:
//     u32 rank, u64 dims[rank], f64 values[prod(dims)]
//
// All integers and floats are little-endian.
struct Checkpoint {
  ModelConfig config;
  ModelParams params;
  // Pipeline facts needed at inference (clean mode, classes, vocabulary
  // fingerprint, ...). Keys must not collide with config keys.
  kv::Entries metadata;
};

void save_checkpoint(std::ostream& out, const Checkpoint& checkpoint);
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);
Checkpoint load_checkpoint(std::istream& in, const std::string& source);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace hsd

#endif  // HSD_CHECKPOINT_HPP_
