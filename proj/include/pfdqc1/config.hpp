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

#include <cstdlib>
#include <string>

#include "pfdqc1/errors.hpp"

namespace pfdqc1 {

/// Numerical tolerances shared by every module.
struct Tolerances {
  double hermiticity = 1e-10;
  double reconstruction = 1e-8;
  double unitarity = 1e-8;
  double projector = 1e-10;
  double psd_clamp = 1e-10;
  double norm_slack = 1e-10;
};

inline const Tolerances& tolerances() {
  static const Tolerances tol{};
  return tol;
}

inline constexpr int kDefaultDenseCap = 12;

/// Largest qubit count for dense construction. PFDQC1_DENSE_CAP overrides.
inline int dense_qubit_cap() {
  if (const char* env = std::getenv("PFDQC1_DENSE_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 30) {
      throw InputError("PFDQC1_DENSE_CAP must be an integer in [1, 30], got '" +
                       std::string(env) + "'");
    }
    return static_cast<int>(v);
  }
  return kDefaultDenseCap;
}

inline void require_dense_cap(int qubits) {
  const int cap = dense_qubit_cap();
  if (qubits > cap) {
    throw InputError("dense dimension cap exceeded: " + std::to_string(qubits) +
                     " qubits > cap " + std::to_string(cap) + " (set PFDQC1_DENSE_CAP)");
  }
}

}  // namespace pfdqc1
