// Copyright 2026 The qpoly Authors
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

namespace qpoly {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad coefficients, out-of-range parameters, bad files.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// Input value outside [-1, 1] (or a weight outside [0, 1]).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A simulator was asked for more qubits than it is configured to hold.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class CircuitError : public Error {
 public:
  using Error::Error;
};

}  // namespace qpoly
