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

#ifndef HSD_CLI_HPP_
#define HSD_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace hsd::cli {

// Default output directory when --out-dir is not given.
inline constexpr const char* kOutputDirEnv = "HSD_OUTPUT_DIR";

// Runs one subcommand. `args` excludes the program name. Returns the process
// exit code: 0 ok, 1 usage, 2 data, 3 numeric.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace hsd::cli

#endif  // HSD_CLI_HPP_
