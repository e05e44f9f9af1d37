// Copyright 2026 The possim Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace possim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Malformed circuit, netlist, or instance text. Carries a 1-based line number
/// (0 when the problem is not tied to a particular line).
class ParseError : public Error {
   public:
    ParseError(std::size_t line, const std::string &what)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {
    }
    std::size_t line() const noexcept {
        return line_;
    }

   private:
    std::size_t line_;
};

class WidthError : public Error {
   public:
    using Error::Error;
};

/// A width exceeds a configured simulation or enumeration limit.
class CapacityError : public Error {
   public:
    using Error::Error;
};

class NoSolution : public Error {
   public:
    using Error::Error;
};

class NonCliffordError : public Error {
   public:
    using Error::Error;
};

class PostselectImpossible : public Error {
   public:
    using Error::Error;
};

class EmptySupport : public Error {
   public:
    using Error::Error;
};

/// Raised when a condition guaranteed by construction fails to hold.
class InternalError : public Error {
   public:
    using Error::Error;
};

}  // namespace possim
