// Copyright 2026 The dptext Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPTEXT_ERRORS_H_
#define DPTEXT_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dptext {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller violated a documented precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

// A text file could not be parsed. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Loaded data is well-formed but violates a structural invariant
// (duplicate ids, gaps, duplicate tokens).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// File header disagrees with its body or with another file.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Numeric payload is unusable (non-finite values).
class DataError : public Error {
 public:
  using Error::Error;
};

class TokenizationError : public Error {
 public:
  TokenizationError(const std::string& what, std::size_t offset)
      : Error(what + " at byte offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Non-retryable failure reported by an LLM endpoint, or a response body we
// cannot interpret.
class EndpointError : public Error {
 public:
  using Error::Error;
};

// Retryable failure: connection problems, 429, 5xx.
class TransientError : public Error {
 public:
  using Error::Error;
};

// Retries were exhausted.
class TimeoutError : public Error {
 public:
  using Error::Error;
};

// Response of an attack model did not have the requested shape. Carries the
// raw body for diagnostics.
class ResponseParseError : public Error {
 public:
  ResponseParseError(const std::string& what, std::string raw_body)
      : Error(what), raw_body_(std::move(raw_body)) {}
  const std::string& raw_body() const { return raw_body_; }

 private:
  std::string raw_body_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace dptext

#endif  // DPTEXT_ERRORS_H_
