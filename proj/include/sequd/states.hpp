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

#include <cmath>
#include <string>

#include "sequd/errors.hpp"
#include "sequd/linalg.hpp"

namespace sequd {

/// Unit vector orthogonal to a qubit state. For real v = (a, b) the result
/// is (b, -a); complex inputs use (conj b, -conj a).
inline ComplexVector orthogonal_complement(const ComplexVector& v, double tol = kDefaultTol) {
  if (v.dim() != 2) throw DimensionError("orthogonal_complement: qubit vector expected");
  const double n = v.norm();
  if (n == 0.0) throw DomainError("orthogonal_complement: zero vector");
  if (std::abs(n - 1.0) > tol) throw DomainError("orthogonal_complement: vector is not normalized");
  return ComplexVector{std::conj(v[1]), -std::conj(v[0])};
}

/// Two equiprobable qubit states with real overlap s, embedded as
/// cos(theta)|0> +- sin(theta)|1> with s = cos(2 theta).
struct StatePair {
  double s = 0.0;
  double theta = 0.0;
  ComplexVector psi1;
  ComplexVector psi2;
  /// Phase chosen so that <psi1_perp|psi2> = sqrt(1 - s^2) > 0.
  ComplexVector psi1_perp;
  /// Equals sqrt(1 - s^2) psi1 - s psi1_perp, so <psi2_perp|psi1> = sqrt(1 - s^2).
  ComplexVector psi2_perp;

  const ComplexVector& state(int index) const {
    if (index == 1) return psi1;
    if (index == 2) return psi2;
    throw DomainError("state index must be 1 or 2, got " + std::to_string(index));
  }
};

inline StatePair make_state_pair(double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw DomainError("make_state_pair: overlap s must lie in [0, 1], got " + std::to_string(s));
  }
  StatePair p;
  p.s = s;
  p.theta = 0.5 * std::acos(s);
  const double c = std::cos(p.theta);
  const double sn = std::sin(p.theta);
  p.psi1 = ComplexVector{c, sn};
  p.psi2 = ComplexVector{c, -sn};
  p.psi1_perp = ComplexVector{sn, -c};
  p.psi2_perp = ComplexVector{sn, c};
  return p;
}

}  // namespace sequd
