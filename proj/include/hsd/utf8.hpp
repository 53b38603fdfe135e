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

#ifndef HSD_UTF8_HPP_
#define HSD_UTF8_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace hsd::utf8 {

constexpr char32_t kReplacement = 0xFFFD;

// Decodes UTF-8; each invalid byte sequence becomes U+FFFD.
std::u32string decode(std::string_view text);

std::string encode(std::u32string_view codepoints);
void append(std::string& out, char32_t cp);

// ASCII whitespace plus the Unicode space separators and line breaks.
bool is_space(char32_t cp);

// Simple lowercase mapping for Latin, Greek and Cyrillic letters. Scripts
// without case (e.g. Bengali) pass through.
char32_t to_lower(char32_t cp);

}  // namespace hsd::utf8

#endif  // HSD_UTF8_HPP_
