// Copyright 2026 The qdyn Authors
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

namespace qdyn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical precondition failures (shape, hermiticity, positivity).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NotHermitian : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NotPsd : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BasisNotOrthonormal : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NotAState : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A matrix that violates the hermiticity- or trace-preservation
/// constraints of a dynamical map.
class InvalidMap : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A scenario or parameter set that does not describe a valid state.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

}  // namespace qdyn
