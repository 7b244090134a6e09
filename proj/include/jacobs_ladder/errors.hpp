// Copyright 2026 The jacobs-ladder Authors
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

namespace jl {

// Base class for every numerical failure raised by the library. The CLI maps
// these onto exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (t < 0, V <= 0, ...).
class DomainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// An asymptotic series cannot deliver the requested tolerance.
class PrecisionLossError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Iteration or panel budget exhausted.
class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// F(T) lies outside the range of G on its increasing branch.
class BracketError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// An iterate of the ladder dropped below the numerical threshold T0.
class DomainExitError : public NumericalError {
 public:
  DomainExitError(int depth, double value, double threshold)
      : NumericalError("ladder iterate at depth " + std::to_string(depth) + " is " +
                       std::to_string(value) + ", below T0 = " + std::to_string(threshold)),
        depth_(depth) {}

  int depth() const noexcept { return depth_; }

 private:
  int depth_;
};

// Malformed checkpoint file or other persisted input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace jl
