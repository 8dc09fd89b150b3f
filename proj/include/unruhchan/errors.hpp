// Copyright 2026 The unruhchan Authors
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

namespace unruhchan {

/// Base class for every error raised by the library. The CLI maps the
/// concrete subclasses onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Occupation or flat index outside the layout.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Malformed call: unknown mode label, empty keep-set, invalid parameter.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Non-physical argument such as a nonpositive acceleration.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Eigen-solver or consistency check failed beyond tolerance.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// The Fock cutoff loses more weight than the caller tolerates.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Output could not be written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A bisection indicator did not change sign across its bracket.
class BracketError : public Error {
 public:
  using Error::Error;
};

}  // namespace unruhchan
