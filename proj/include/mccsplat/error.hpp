// Copyright 2026 The mccsplat Authors
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

#ifndef MCCSPLAT_ERROR_HPP_
#define MCCSPLAT_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mccsplat {

// Malformed input text. `line` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " +
                                           what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Invalid configuration values or inconsistent declarations.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A referenced input file does not exist or cannot be opened.
class MissingInputError : public std::runtime_error {
 public:
  explicit MissingInputError(const std::string& path)
      : std::runtime_error("cannot open input: " + path), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// The experiment cannot produce a meaningful result (e.g. empty test set).
class DegenerateExperimentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mccsplat

#endif  // MCCSPLAT_ERROR_HPP_
