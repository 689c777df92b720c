// Copyright 2026 The nerkit Authors
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

#ifndef NERKIT_ERRORS_HPP_
#define NERKIT_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nerkit {

/// Base class of all nerkit exceptions.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input data (bad record, unknown label, misaligned corpora).
/// Carries the 1-based line number when one is known, 0 otherwise.
class DataError : public Error {
 public:
  explicit DataError(const std::string& msg, std::size_t line = 0)
      : Error(line ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Ill-formed boundary-tag sequence (End without Begin, unclosed Begin, ...).
class BoundaryError : public DataError {
 public:
  using DataError::DataError;
};

/// Gold and predicted corpora do not cover the same token sequence.
class AlignmentError : public DataError {
 public:
  using DataError::DataError;
};

/// Invalid configuration or violated operation precondition.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A remote registry lookup failed in a way worth retrying (network,
/// parse). Never signalled as an empty result set.
class LookupError : public Error {
 public:
  explicit LookupError(const std::string& msg, bool retryable = true)
      : Error(msg), retryable_(retryable) {}
  bool retryable() const { return retryable_; }

 private:
  bool retryable_;
};

}  // namespace nerkit

#endif  // NERKIT_ERRORS_HPP_
