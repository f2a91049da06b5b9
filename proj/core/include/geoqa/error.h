// Copyright 2026 The GeoQA Authors.
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

#ifndef GEOQA_ERROR_H_
#define GEOQA_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace geoqa {

// Base of every error raised by the library. The stage names the pipeline
// step that failed ("schema", "tokenize", "formulate", ...); it is what the
// CLI prints in front of the message.
class Error : public std::runtime_error {
 public:
  Error(std::string stage, const std::string& message)
      : std::runtime_error(message), stage_(std::move(stage)) {}

  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

// Malformed input file or query text. `position` is a 1-based line number
// for line-oriented files and a 0-based byte offset for query text.
class ParseError : public Error {
 public:
  ParseError(std::string stage, const std::string& message,
             std::size_t position)
      : Error(std::move(stage), message), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace geoqa

#endif  // GEOQA_ERROR_H_
