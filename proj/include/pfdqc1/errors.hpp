// Copyright 2026 The pfdqc1 Authors
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

namespace pfdqc1 {

/// Malformed or invalid input (exit code 2 at the CLI).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not satisfy its contract.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A shot plan needs more repetitions than the configured cap (exit code 3).
class ShotCapExceeded : public std::runtime_error {
 public:
  ShotCapExceeded(double required_q, double cap)
      : std::runtime_error("planned shot count " + std::to_string(required_q) +
                           " exceeds cap " + std::to_string(cap)),
        required_q_(required_q),
        cap_(cap) {}

  double required_q() const noexcept { return required_q_; }
  double cap() const noexcept { return cap_; }

 private:
  double required_q_;
  double cap_;
};

/// A validated property did not hold (exit code 4).
class PropertyFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pfdqc1
