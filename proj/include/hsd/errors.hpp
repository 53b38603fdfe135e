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

#ifndef HSD_ERRORS_HPP_
#define HSD_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hsd {

// Process exit code associated with each failure class.
enum class ErrorKind : int {
  kUsage = 1,
  kData = 2,
  kNumeric = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  int exit_code() const { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::kUsage, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorKind::kData, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what)
      : Error(ErrorKind::kNumeric, what) {}
};

// A label outside the dataset's LabelSchema. `row` is 1-based.
class UnknownLabelError : public DataError {
 public:
  UnknownLabelError(std::size_t row, const std::string& label)
      : DataError("unknown label '" + label + "' at row " + std::to_string(row)),
        row_(row),
        label_(label) {}

  std::size_t row() const { return row_; }
  const std::string& label() const { return label_; }

 private:
  std::size_t row_;
  std::string label_;
};

// A parse failure tied to a 1-based line of an input file.
class ParseError : public DataError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : DataError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DimensionMismatchError : public ParseError {
 public:
  using ParseError::ParseError;
};

class MalformedNumberError : public ParseError {
 public:
  using ParseError::ParseError;
};

class EmptyCorpusError : public DataError {
 public:
  EmptyCorpusError() : DataError("empty corpus: no token survived tokenization") {}
};

}  // namespace hsd

#endif  // HSD_ERRORS_HPP_
