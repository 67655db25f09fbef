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

// Three-outcome unambiguous discrimination measurements on a qubit.
//
// Outcome 1 identifies psi1, outcome 2 identifies psi2 and outcome 0 is the
// inconclusive result. Every instrument built here leaves the qubit in phi_i
// whenever psi_i was measured, regardless of whether the outcome was i or 0,
// so a later observer faces the pair (phi1, phi2) with overlap
// t = s / sqrt(q1 q2).

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include "sequd/errors.hpp"
#include "sequd/linalg.hpp"
#include "sequd/states.hpp"

namespace sequd {

/// Overlaps closer than this to 0 or 1 are treated as the degenerate endpoints.
inline constexpr double kDegenerateOverlapTol = 1e-12;

struct UDMeasurement {
  /// Indexed by outcome: kraus[0] = A0 (failure), kraus[1] = A1, kraus[2] = A2.
  std::array<ComplexMatrix, 3> kraus;
  /// povm[1], povm[2] = A_j^dagger A_j; povm[0] = I - povm[1] - povm[2].
  std::array<ComplexMatrix, 3> povm;
  StatePair input_pair;
  StatePair output_pair;
  double q1 = 0.0;
  double q2 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;

  double s() const { return input_pair.s; }
  double t() const { return output_pair.s; }

  /// True when the two post-measurement states coincide, leaving nothing for
  /// a later observer.
  bool exhausts_information(double tol = kDefaultTol) const { return t() >= 1.0 - tol; }
};

/// Conclusive Kraus operator sqrt(c) |phi><perp| for one outcome.
inline ComplexMatrix success_kraus(double c, const ComplexVector& phi, const ComplexVector& perp) {
  return std::sqrt(c) * ComplexMatrix::outer(phi, perp);
}

/// A0 = sqrt(a1) |phi1><psi2_perp| + sqrt(a2) |phi2><psi1_perp|.
inline ComplexMatrix failure_kraus(const StatePair& in, const StatePair& out, double a1, double a2) {
  return std::sqrt(a1) * ComplexMatrix::outer(out.psi1, in.psi2_perp) +
         std::sqrt(a2) * ComplexMatrix::outer(out.psi2, in.psi1_perp);
}

inline void require_interior_overlap(double s, const char* where) {
  if (!(s > kDegenerateOverlapTol && s < 1.0 - kDegenerateOverlapTol)) {
    std::ostringstream os;
    os << where << ": overlap s = " << s << " is degenerate; need 0 < s < 1";
    throw DegenerateInputError(os.str());
  }
}

/// Information-preserving measurement with failure probabilities (q1, q2).
/// Requires q1 q2 >= s^2, otherwise the failure element would not be
/// positive. The output overlap is derived, never supplied.
inline UDMeasurement build_intermediate_ud(const StatePair& pair, double q1, double q2) {
  const double s = pair.s;
  require_interior_overlap(s, "build_intermediate_ud");
  for (double q : {q1, q2}) {
    if (!(q > 0.0 && q <= 1.0)) {
      throw DomainError("build_intermediate_ud: failure probabilities must lie in (0, 1]");
    }
  }
  const double s2 = s * s;
  if (q1 * q2 < s2 - 1e-12) {
    std::ostringstream os;
    os << "build_intermediate_ud: q1*q2 = " << q1 * q2 << " < s^2 = " << s2
       << " (failure element would not be positive)";
    throw ConstraintViolation(os.str());
  }

  UDMeasurement m;
  m.input_pair = pair;
  m.q1 = q1;
  m.q2 = q2;
  m.c1 = (1.0 - q1) / (1.0 - s2);
  m.c2 = (1.0 - q2) / (1.0 - s2);
  m.a1 = q1 / (1.0 - s2);
  m.a2 = q2 / (1.0 - s2);
  m.output_pair = make_state_pair(std::min(1.0, s / std::sqrt(q1 * q2)));

  m.kraus[1] = success_kraus(m.c1, m.output_pair.psi1, pair.psi2_perp);
  m.kraus[2] = success_kraus(m.c2, m.output_pair.psi2, pair.psi1_perp);
  m.kraus[0] = failure_kraus(pair, m.output_pair, m.a1, m.a2);

  m.povm[1] = m.c1 * ComplexMatrix::outer(pair.psi2_perp, pair.psi2_perp);
  m.povm[2] = m.c2 * ComplexMatrix::outer(pair.psi1_perp, pair.psi1_perp);
  m.povm[0] = ComplexMatrix::identity(2) - m.povm[1] - m.povm[2];
  return m;
}

/// Optimal equal-prior measurement: q1 = q2 = s and all post-measurement
/// states collapse to a single state.
inline UDMeasurement build_optimal_ud(const StatePair& pair) {
  require_interior_overlap(pair.s, "build_optimal_ud");
  return build_intermediate_ud(pair, pair.s, pair.s);
}

struct DiagnosticsReport {
  double tol = kDefaultTol;
  /// ||Pi0 + Pi1 + Pi2 - I||_F
  double completeness_residual = 0.0;
  /// Closed forms Tr Pi0 = 2 - c1 - c2 and det Pi0 = 1 - c1 - c2 + c1 c2 (1 - s^2).
  double trace_pi0_formula = 0.0;
  double det_pi0_formula = 0.0;
  /// The same two quantities evaluated from the stored matrix.
  double trace_pi0 = 0.0;
  double det_pi0 = 0.0;
  std::array<bool, 3> positive{};
  /// <psi2|Pi1|psi2> and <psi1|Pi2|psi1>.
  double zero_error_residual_1 = 0.0;
  double zero_error_residual_2 = 0.0;
  /// ||Pi0 - A0^dagger A0||_F; nonzero when q1 q2 != s^2 / t^2.
  double consistency_gap = 0.0;
  /// max_j ||Pi_j - A_j^dagger A_j||_F over the conclusive outcomes.
  double kraus_gap = 0.0;
  /// |<phi1|phi2> - s / sqrt(q1 q2)|
  double overlap_law_residual = 0.0;
  /// max_i |<psi_i|Pi_i|psi_i> - (1 - q_i)|
  double success_residual = 0.0;

  bool completeness_ok() const { return completeness_residual < tol; }
  bool positivity_ok() const { return positive[0] && positive[1] && positive[2]; }
  bool zero_error_ok() const { return zero_error_residual_1 < tol && zero_error_residual_2 < tol; }
  bool consistency_ok() const { return consistency_gap < tol && kraus_gap < tol; }
  bool overlap_law_ok() const { return overlap_law_residual < tol; }
  bool success_ok() const { return success_residual < tol; }
  bool passed() const {
    return completeness_ok() && positivity_ok() && zero_error_ok() && consistency_ok() &&
           overlap_law_ok() && success_ok();
  }
};

inline DiagnosticsReport validate(const UDMeasurement& m, double tol = kDefaultTol) {
  DiagnosticsReport r;
  r.tol = tol;
  const auto& in = m.input_pair;
  const double s = in.s;

  r.completeness_residual =
      (m.povm[0] + m.povm[1] + m.povm[2] - ComplexMatrix::identity(2)).frobenius_norm();

  r.trace_pi0_formula = 2.0 - m.c1 - m.c2;
  r.det_pi0_formula = 1.0 - m.c1 - m.c2 + m.c1 * m.c2 * (1.0 - s * s);
  const auto& p0 = m.povm[0];
  r.trace_pi0 = p0.trace().real();
  r.det_pi0 = (p0(0, 0) * p0(1, 1) - p0(0, 1) * p0(1, 0)).real();
  for (std::size_t j = 0; j < 3; ++j) {
    r.positive[j] = hermiticity_residual(m.povm[j]) <= tol && is_positive_semidefinite(m.povm[j], tol);
  }

  r.zero_error_residual_1 = std::abs(expectation(m.povm[1], in.psi2));
  r.zero_error_residual_2 = std::abs(expectation(m.povm[2], in.psi1));

  r.consistency_gap = (m.povm[0] - m.kraus[0].adjoint() * m.kraus[0]).frobenius_norm();
  r.kraus_gap = std::max((m.povm[1] - m.kraus[1].adjoint() * m.kraus[1]).frobenius_norm(),
                         (m.povm[2] - m.kraus[2].adjoint() * m.kraus[2]).frobenius_norm());

  const Complex t = inner_product(m.output_pair.psi1, m.output_pair.psi2);
  r.overlap_law_residual = std::abs(t - s / std::sqrt(m.q1 * m.q2));

  r.success_residual =
      std::max(std::abs(expectation(m.povm[1], in.psi1).real() - (1.0 - m.q1)),
               std::abs(expectation(m.povm[2], in.psi2).real() - (1.0 - m.q2)));
  return r;
}

/// Outcome probabilities <psi|Pi_j|psi>, indexed by outcome.
inline std::array<double, 3> outcome_probabilities(const UDMeasurement& m, const ComplexVector& state) {
  std::array<double, 3> p{};
  for (std::size_t j = 0; j < 3; ++j) p[j] = std::max(0.0, expectation(m.povm[j], state).real());
  return p;
}

struct MeasurementResult {
  int outcome = 0;
  ComplexVector post_state;
};

/// Samples an outcome for an arbitrary qubit state. [0, 1) is split into
/// consecutive cells of widths p1, p2, p0 in that order; `rand` picks a cell.
/// The post-measurement state is A_j|state> normalized.
inline MeasurementResult apply_to_state(const UDMeasurement& m, const ComplexVector& state, double rand) {
  const auto p = outcome_probabilities(m, state);
  int outcome = 0;
  if (rand < p[1]) {
    outcome = 1;
  } else if (rand < p[1] + p[2]) {
    outcome = 2;
  }
  ComplexVector post = m.kraus[static_cast<std::size_t>(outcome)] * state;
  if (post.norm() == 0.0) {
    // Only reachable through rounding at a zero-probability cell boundary.
    throw DomainError("apply: sampled an outcome with zero amplitude");
  }
  return {outcome, post.normalized()};
}

/// Measures one of the two declared input states (index 1 or 2).
inline MeasurementResult apply(const UDMeasurement& m, int input_index, double rand) {
  return apply_to_state(m, m.input_pair.state(input_index), rand);
}

}  // namespace sequd
