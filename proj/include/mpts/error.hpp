/*
 * Copyright 2026 The mpts-synth Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef MPTS_ERROR_HPP
#define MPTS_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mpts {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: model files, formulas, HOA text, controllers.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in an LTL formula; `position` is a 0-based byte offset.
class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t position)
      : InputError(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A configured budget (automaton states, candidate controllers, ...) was exhausted.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace mpts

#endif  // MPTS_ERROR_HPP
