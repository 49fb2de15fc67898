// Copyright 2026 The revpulse Authors
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

namespace revpulse {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that violates a documented invariant (unphysical state, bad
/// parameter, malformed scenario). Maps to CLI exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Scenario text that cannot be parsed. `line`/`column` are 1-based and zero
/// when unknown; `pointer` is a JSON pointer to the offending key.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::string pointer, int line = 0,
             int column = 0)
      : ValidationError(what),
        pointer_(std::move(pointer)),
        line_(line),
        column_(column) {}

  const std::string& pointer() const noexcept { return pointer_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  std::string pointer_;
  int line_;
  int column_;
};

/// Base for failures of the numerical pipeline. Maps to CLI exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A division by a quantity that vanishes at `time_ps`: v below v_min in the
/// trajectory inversion, or 1+cos(2 phi) below denom_min in the carrier.
class SingularityError : public NumericalError {
 public:
  enum class Kind { OffSphere, BlochCompletion, Prescription, Carrier, ConsistentV };

  SingularityError(Kind kind, double time_ps, const std::string& what)
      : NumericalError(what), kind_(kind), time_ps_(time_ps) {}

  Kind kind() const noexcept { return kind_; }
  double time_ps() const noexcept { return time_ps_; }

 private:
  Kind kind_;
  double time_ps_;
};

/// Adaptive integrator could not meet its tolerance (step underflow or step
/// budget exhausted).
class IntegrationError : public NumericalError {
 public:
  IntegrationError(const std::string& what, double time_ps)
      : NumericalError(what), time_ps_(time_ps) {}

  double time_ps() const noexcept { return time_ps_; }

 private:
  double time_ps_;
};

}  // namespace revpulse
