/*
 * Copyright 2026 The nftsignal Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef NFTSIGNAL_ERROR_H_
#define NFTSIGNAL_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nftsignal {

// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or invalid input record. `line()` is 1-based, 0 when unknown.
class DataError : public Error {
 public:
  DataError(const std::string& message, std::size_t line = 0)
      : Error(line > 0 ? message + " (line " + std::to_string(line) + ")"
                       : message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Dimension mismatch between arguments.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Series or evaluation set too short for the requested computation.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// Rank-deficient design matrix, constant series, zero-residual fit.
class SingularityError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration document or option value.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace nftsignal

#endif  // NFTSIGNAL_ERROR_H_
