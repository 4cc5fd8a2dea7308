// Copyright 2026 The qrc-robustness Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qrc {

/// Base class for every error raised by the library. The CLI maps the three
/// subclasses onto distinct process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or invalid arguments (exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed, missing or inconsistent input data (exit code 3).
class DataError : public Error {
 public:
  enum class Kind {
    kIo,
    kBadMagic,
    kTruncated,
    kCountMismatch,
    kChecksum,
    kInsufficientSamples,
    kFormat,
  };

  DataError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Integrator failure, NaN loss or any other numerical breakdown (exit code 4).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qrc
