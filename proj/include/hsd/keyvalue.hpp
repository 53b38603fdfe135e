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

#ifndef HSD_KEYVALUE_HPP_
#define HSD_KEYVALUE_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// `key=value` text used by run configs, dataset manifests and checkpoint
// headers. Blank lines and lines starting with '#' are ignored; keys and
// values are trimmed of surrounding whitespace.
namespace hsd::kv {

class Entries {
 public:
  void set(std::string key, std::string value);
  std::optional<std::string> get(std::string_view key) const;
  // Throws DataError when the key is absent.
  const std::string& require(std::string_view key) const;

  const std::vector<std::pair<std::string, std::string>>& items() const {
    return items_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

// Duplicate keys are rejected.
Entries parse(std::string_view text, const std::string& source);
Entries read_file(const std::filesystem::path& path);

std::string format(const Entries& entries);

}  // namespace hsd::kv

#endif  // HSD_KEYVALUE_HPP_
