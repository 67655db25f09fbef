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

// Unitary dilation of the optimal intermediate measurement (q1 = q2 = t =
// sqrt(s)) onto a qubit (a) coupled to a qutrit ancilla (b) prepared in
// |0>_b. A projective measurement of the ancilla then yields outcome j on
// |j>_b, with |0>_b the failure result.
//
// Joint basis index = (qubit index) * 3 + (qutrit index).

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "sequd/errors.hpp"
#include "sequd/linalg.hpp"
#include "sequd/states.hpp"
#include "sequd/ud_povm.hpp"

namespace sequd {

inline constexpr std::size_t kQutritDim = 3;
inline constexpr std::size_t kJointDim = 2 * kQutritDim;

constexpr std::size_t joint_index(std::size_t qubit, std::size_t qutrit) { return qubit * kQutritDim + qutrit; }

struct DilationUnitary {
  ComplexMatrix u;
  double s = 0.0;
  /// s = cos(2 theta), t = cos(2 theta_prime) = sqrt(s).
  double theta = 0.0;
  double theta_prime = 0.0;
  ComplexVector v1;
  ComplexVector v2;
  StatePair input_pair;
  StatePair output_pair;

  double q() const { return output_pair.s; }
};

inline DilationUnitary build_dilation(double s) {
  require_interior_overlap(s, "build_dilation");
  DilationUnitary d;
  d.s = s;
  d.input_pair = make_state_pair(s);
  const double rs = std::sqrt(s);
  d.output_pair = make_state_pair(rs);
  d.theta = d.input_pair.theta;
  d.theta_prime = d.output_pair.theta;

  const double side = std::sqrt((1.0 - rs) / 2.0);
  d.v1 = (1.0 / std::sqrt(1.0 + rs)) * ComplexVector{std::sqrt(2.0) * std::pow(s, 0.25), side, side};
  d.v2 = ComplexVector{0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)};

  const ComplexVector ket0 = ComplexVector::basis(2, 0);
  const ComplexVector ket1 = ComplexVector::basis(2, 1);
  // U|0>_a|0>_b and U|1>_a|0>_b.
  const ComplexVector col00 =
      (1.0 / std::sqrt(2.0 * (1.0 + s))) * ((1.0 + rs) * kron(ket0, d.v1) + (1.0 - rs) * kron(ket1, d.v2));
  const ComplexVector col10 = (1.0 / std::sqrt(2.0)) * (kron(ket0, d.v2) + kron(ket1, d.v1));

  const std::array<ComplexVector, 2> given{col00, col10};
  const ComplexMatrix completed = complete_to_unitary(given);

  // The two specified columns go back to their joint-basis positions; the
  // completion columns fill the remaining positions in ascending order.
  d.u = ComplexMatrix(kJointDim, kJointDim);
  d.u.set_column(joint_index(0, 0), completed.column(0));
  d.u.set_column(joint_index(1, 0), completed.column(1));
  std::size_t next = 2;
  for (std::size_t c = 0; c < kJointDim; ++c) {
    if (c == joint_index(0, 0) || c == joint_index(1, 0)) continue;
    d.u.set_column(c, completed.column(next++));
  }
  return d;
}

/// U applied to |psi_i>_a |0>_b.
inline ComplexVector dilated_state(const DilationUnitary& d, int input_index) {
  return d.u * kron(d.input_pair.state(input_index), ComplexVector::basis(kQutritDim, 0));
}

/// max_i || U|psi_i>|0> - |phi_i>(sqrt(1-q)|i> + sqrt(q)|0>) ||
inline double dilation_action_residual(const DilationUnitary& d) {
  double worst = 0.0;
  const double q = d.q();
  for (int i = 1; i <= 2; ++i) {
    ComplexVector anc(kQutritDim);
    anc[0] = std::sqrt(q);
    anc[static_cast<std::size_t>(i)] = std::sqrt(1.0 - q);
    const ComplexVector expected = kron(d.output_pair.state(i), anc);
    worst = std::max(worst, (dilated_state(d, i) - expected).norm());
  }
  return worst;
}

struct DilationStatistics {
  /// Indexed by ancilla outcome: 0 = failure, 1 = psi1, 2 = psi2.
  std::array<double, 3> probs{};
  /// Conditional qubit state per outcome; all zeros when the outcome has
  /// zero probability.
  std::array<ComplexVector, 3> post_states;
};

inline DilationStatistics dilation_statistics(const DilationUnitary& d, int input_index) {
  const ComplexVector joint = dilated_state(d, input_index);
  DilationStatistics st;
  for (std::size_t j = 0; j < kQutritDim; ++j) {
    ComplexVector branch(2);
    for (std::size_t a = 0; a < 2; ++a) branch[a] = joint[joint_index(a, j)];
    const double n = branch.norm();
    st.probs[j] = n * n;
    st.post_states[j] = n > 0.0 ? branch.normalized() : ComplexVector(2);
  }
  return st;
}

/// Largest disagreement between the dilation and a POVM instrument built
/// for the same optimal parameters: max |prob difference| plus max
/// post-state infidelity over outcomes that can occur.
inline double povm_equivalence(const DilationUnitary& d, const UDMeasurement& meas, double tol = kDefaultTol) {
  const double q = d.q();
  if (std::abs(meas.s() - d.s) > tol || std::abs(meas.q1 - q) > tol || std::abs(meas.q2 - q) > tol) {
    throw DomainError("povm_equivalence: measurement parameters do not match the dilation (need q1 = q2 = sqrt(s))");
  }
  double prob_gap = 0.0;
  double infidelity = 0.0;
  for (int i = 1; i <= 2; ++i) {
    const auto dil = dilation_statistics(d, i);
    const ComplexVector& psi = meas.input_pair.state(i);
    const auto povm_probs = outcome_probabilities(meas, psi);
    for (std::size_t j = 0; j < 3; ++j) {
      prob_gap = std::max(prob_gap, std::abs(dil.probs[j] - povm_probs[j]));
      if (dil.probs[j] <= 1e-14 && povm_probs[j] <= 1e-14) continue;
      const ComplexVector povm_post = (meas.kraus[j] * psi).normalized();
      infidelity = std::max(infidelity, 1.0 - fidelity(dil.post_states[j], povm_post));
    }
  }
  return prob_gap + infidelity;
}

}  // namespace sequd
