// Copyright 2026 The vulnlife Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VULNLIFE_ERROR_HPP_
#define VULNLIFE_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace vulnlife {

// Base of every error raised by the library. The command-line tool maps any
// DataError to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnparseableVersion : public DataError {
 public:
  explicit UnparseableVersion(const std::string& text)
      : DataError("unparseable version '" + text + "'"), text_(text) {}
  const std::string& text() const noexcept { return text_; }

 private:
  std::string text_;
};

// Malformed input. `line()` is 1-based; 0 when no line applies (JSON input).
class FormatError : public DataError {
 public:
  FormatError(const std::string& source, std::size_t line,
              const std::string& what)
      : DataError(source + (line ? ":" + std::to_string(line) : "") + ": " +
                  what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class CycleDetected : public DataError {
 public:
  explicit CycleDetected(std::vector<std::string> path);
  const std::vector<std::string>& path() const noexcept { return path_; }

 private:
  std::vector<std::string> path_;
};

class EmptyInput : public DataError {
 public:
  using DataError::DataError;
};

class DegenerateData : public DataError {
 public:
  using DataError::DataError;
};

class NonConvergence : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace vulnlife

#endif  // VULNLIFE_ERROR_HPP_
