// Copyright 2026 The Authors.
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

#ifndef EPISFM_ERROR_H_
#define EPISFM_ERROR_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace episfm {

// Invalid argument or configuration value.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A mathematical invariant that an input was required to satisfy does not
// hold (e.g. a phase-type chain that never absorbs).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed instance document. byte_offset is set when the failure can be
// located in the input stream.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::optional<std::size_t> byte_offset)
      : std::runtime_error(byte_offset
                               ? what + " (at byte " +
                                     std::to_string(*byte_offset) + ")"
                               : what),
        byte_offset_(byte_offset) {}

  std::optional<std::size_t> byte_offset() const { return byte_offset_; }

 private:
  std::optional<std::size_t> byte_offset_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace episfm

#endif  // EPISFM_ERROR_H_
