// Copyright 2026 The qctl Authors
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

namespace qctl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Subsystem indices or operator dimensions do not fit a DimensionSignature.
class SignatureError : public Error {
 public:
  using Error::Error;
};

/// The invariant a ValidationError refers to.
enum class Invariant {
  kHermiticity,
  kPositivity,
  kTrace,
  kUnitarity,
  kNorm,
  kCompleteness,
  kProbability,
  kNonNegativeEntropy,
  kCodeSpace,
  kPurity,
};

const char* to_string(Invariant inv) noexcept;

/// A value failed one of its type invariants. `magnitude()` is the size of the
/// violation (e.g. trace deviation, most negative eigenvalue).
class ValidationError : public Error {
 public:
  ValidationError(Invariant inv, double magnitude, const std::string& context);

  Invariant invariant() const noexcept { return invariant_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  Invariant invariant_;
  double magnitude_;
};

/// An operation's precondition (other than shape or value validity) failed.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace qctl
