// Copyright 2026 The sequd Authors
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

#include <stdexcept>
#include <string>

namespace sequd {

/// A precondition on an argument was violated.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Overlap at an endpoint (s = 0 or s = 1) where the construction has no
/// meaningful interior solution.
class DegenerateInputError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Failure probabilities incompatible with a positive failure element or
/// with the overlap chaining between consecutive observers.
class ConstraintViolation : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace sequd
