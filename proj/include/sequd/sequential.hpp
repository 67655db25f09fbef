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

// Chains of observers that measure the same qubit one after another.
//
// Observer k receives the pair left behind by observer k-1 and performs an
// intermediate measurement with equal failure probabilities; the last
// observer measures optimally and leaves nothing behind.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <utility>
#include <vector>

#include "sequd/errors.hpp"
#include "sequd/rng.hpp"
#include "sequd/states.hpp"
#include "sequd/ud_povm.hpp"

namespace sequd {

struct ChainSpec {
  double s = 0.0;
  std::vector<UDMeasurement> stages;

  std::size_t observers() const { return stages.size(); }
};

/// Outcome statistics of a Monte Carlo run. Reports from disjoint trial
/// ranges merge by addition.
struct TallyReport {
  std::uint64_t trials = 0;
  /// Trials that prepared psi1 / psi2.
  std::array<std::uint64_t, 2> prepared{};
  /// Trials where every observer succeeded, keyed by the prepared state.
  std::array<std::uint64_t, 2> joint_success{};
  std::uint64_t at_least_one = 0;
  /// Conclusive outcomes naming the wrong state.
  std::uint64_t error_count = 0;
  /// Conclusive results per observer, in chain order.
  std::vector<std::uint64_t> observer_success;

  std::uint64_t joint_total() const { return joint_success[0] + joint_success[1]; }

  double joint_probability() const { return rate(joint_total()); }
  double joint_stderr() const { return binomial_stderr(joint_probability()); }
  double at_least_one_rate() const { return rate(at_least_one); }
  double at_least_one_stderr() const { return binomial_stderr(at_least_one_rate()); }

  double rate(std::uint64_t count) const {
    return trials == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(trials);
  }
  double binomial_stderr(double p) const {
    return trials == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  }

  TallyReport& operator+=(const TallyReport& o) {
    trials += o.trials;
    for (std::size_t i = 0; i < 2; ++i) {
      prepared[i] += o.prepared[i];
      joint_success[i] += o.joint_success[i];
    }
    at_least_one += o.at_least_one;
    error_count += o.error_count;
    if (observer_success.size() < o.observer_success.size()) {
      observer_success.resize(o.observer_success.size(), 0);
    }
    for (std::size_t k = 0; k < o.observer_success.size(); ++k) observer_success[k] += o.observer_success[k];
    return *this;
  }

  friend TallyReport operator+(TallyReport a, const TallyReport& b) { return a += b; }
  bool operator==(const TallyReport&) const = default;
};

/// Average joint success of two observers,
/// 1/2 [(1 - q1B)(1 - q1C) + (1 - q2B)(1 - q2C)].
///
/// Charlie's failure probabilities fix t = sqrt(q1C q2C), which must lie in
/// [s, 1]; Bob's must then satisfy q1B q2B = s^2 / t^2.
inline double joint_success_analytic(double s, std::pair<double, double> q_bob,
                                     std::pair<double, double> q_charlie, double tol = kDefaultTol) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("joint_success_analytic: s must lie in [0, 1]");
  for (double q : {q_bob.first, q_bob.second, q_charlie.first, q_charlie.second}) {
    if (!(q >= 0.0 && q <= 1.0)) {
      throw DomainError("joint_success_analytic: failure probabilities must lie in [0, 1]");
    }
  }
  const double t = std::sqrt(q_charlie.first * q_charlie.second);
  if (t < s - tol || t > 1.0 + tol) {
    std::ostringstream os;
    os << "joint_success_analytic: Charlie's constraint q1C*q2C = t^2 needs t in [s, 1], got t = " << t;
    throw ConstraintViolation(os.str());
  }
  const double bob_product = q_bob.first * q_bob.second;
  if (std::abs(bob_product * t * t - s * s) > tol) {
    std::ostringstream os;
    os << "joint_success_analytic: Bob's constraint q1B*q2B = s^2/t^2 violated (q1B*q2B = " << bob_product
       << ", s^2/t^2 = " << (t > 0 ? s * s / (t * t) : INFINITY) << ")";
    throw ConstraintViolation(os.str());
  }
  return 0.5 * ((1.0 - q_bob.first) * (1.0 - q_charlie.first) +
                (1.0 - q_bob.second) * (1.0 - q_charlie.second));
}

/// Maximizes a unimodal function on [lo, hi] by golden-section search.
template <class F>
double golden_section_maximize(F&& f, double lo, double hi, int max_iterations = 200,
                               double width_tol = 1e-12) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < max_iterations && (b - a) > width_tol; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

struct TwoObserverOptimum {
  double t_star = 0.0;
  /// Bob's failure probability s / t*; Charlie's is t*.
  double q_star = 0.0;
  double p_star = 0.0;
  /// |p* - (1 - sqrt s)^2|
  double closed_form_gap = 0.0;
};

/// Joint success on the equal-failure slice as a function of the
/// intermediate overlap t: Bob fails with s/t and Charlie with t.
inline double equal_failure_joint_success(double s, double t) { return (1.0 - s / t) * (1.0 - t); }

inline TwoObserverOptimum optimize_two_observer(double s) {
  require_interior_overlap(s, "optimize_two_observer");
  constexpr double eps = 1e-9;
  TwoObserverOptimum r;
  r.t_star = golden_section_maximize([s](double t) { return equal_failure_joint_success(s, t); },
                                     s + eps, 1.0 - eps);
  r.q_star = s / r.t_star;
  r.p_star = equal_failure_joint_success(s, r.t_star);
  const double root = 1.0 - std::sqrt(s);
  r.closed_form_gap = std::abs(r.p_star - root * root);
  return r;
}

/// (1 - s^(1/n))^n, the optimum for n observers with equal failure
/// probabilities.
inline double optimal_n_observer(double s, int n) {
  if (n < 1) throw DomainError("optimal_n_observer: need n >= 1, got " + std::to_string(n));
  require_interior_overlap(s, "optimal_n_observer");
  return std::pow(1.0 - std::pow(s, 1.0 / n), n);
}

/// Geometric overlap schedule: observer k (1-based) sees overlap
/// s^((n-k+1)/n), fails with probability s^(1/n) on both states and passes
/// on overlap s^((n-k)/n). The last observer is optimal.
inline ChainSpec build_chain(double s, int n) {
  if (n < 1) throw DomainError("build_chain: need n >= 1, got " + std::to_string(n));
  require_interior_overlap(s, "build_chain");
  ChainSpec chain;
  chain.s = s;
  const double q = std::pow(s, 1.0 / n);
  StatePair pair = make_state_pair(s);
  for (int k = 1; k <= n; ++k) {
    UDMeasurement stage = (k == n) ? build_optimal_ud(pair) : build_intermediate_ud(pair, q, q);
    pair = stage.output_pair;
    chain.stages.push_back(std::move(stage));
  }
  return chain;
}

/// Checks overlap chaining and that the last observer exhausts the qubit.
inline bool chain_is_consistent(const ChainSpec& chain, double tol = kDefaultTol) {
  if (chain.stages.empty()) return false;
  if (std::abs(chain.stages.front().s() - chain.s) > tol) return false;
  for (std::size_t k = 0; k + 1 < chain.stages.size(); ++k) {
    if (std::abs(chain.stages[k].t() - chain.stages[k + 1].s()) > tol) return false;
  }
  return chain.stages.back().exhausts_information(tol);
}

/// Equal-prior average over both branches of the product of per-stage
/// success probabilities.
inline double chain_joint_success(const ChainSpec& chain) {
  double p1 = 1.0;
  double p2 = 1.0;
  for (const auto& st : chain.stages) {
    p1 *= 1.0 - st.q1;
    p2 *= 1.0 - st.q2;
  }
  return 0.5 * (p1 + p2);
}

/// Probability that at least one observer succeeds: one minus the chance
/// that every stage fails.
inline double chain_at_least_one(const ChainSpec& chain) {
  double f1 = 1.0;
  double f2 = 1.0;
  for (const auto& st : chain.stages) {
    f1 *= st.q1;
    f2 *= st.q2;
  }
  return 1.0 - 0.5 * (f1 + f2);
}

/// One pass of a qubit prepared in psi_{prepared} through every stage,
/// recorded into `tally`. Draws one uniform per stage from `rng`.
inline void run_chain_trial(const ChainSpec& chain, int prepared, TrialStream& rng, TallyReport& tally) {
  ComplexVector state = chain.stages.front().input_pair.state(prepared);
  bool all = true;
  bool any = false;
  for (std::size_t k = 0; k < chain.stages.size(); ++k) {
    auto r = apply_to_state(chain.stages[k], state, rng.uniform());
    if (r.outcome == prepared) {
      ++tally.observer_success[k];
      any = true;
    } else {
      all = false;
      if (r.outcome != 0) ++tally.error_count;
    }
    state = r.post_state;
  }
  if (all) ++tally.joint_success[static_cast<std::size_t>(prepared - 1)];
  if (any) ++tally.at_least_one;
}

/// Monte Carlo over the measurement tree. Trial i uses TrialStream(seed, i):
/// the first uniform picks the prepared state, then one uniform per stage.
inline TallyReport simulate_chain(const ChainSpec& chain, std::uint64_t trials, std::uint64_t seed,
                                  unsigned workers = 0) {
  if (trials < 1) throw DomainError("simulate_chain: need at least one trial");
  if (chain.stages.empty()) throw DomainError("simulate_chain: empty chain");
  auto chunk = [&chain, seed](std::uint64_t begin, std::uint64_t end) {
    TallyReport t;
    t.observer_success.assign(chain.stages.size(), 0);
    for (std::uint64_t i = begin; i < end; ++i) {
      TrialStream rng(seed, i);
      const int prepared = rng.uniform() < 0.5 ? 1 : 2;
      ++t.trials;
      ++t.prepared[static_cast<std::size_t>(prepared - 1)];
      run_chain_trial(chain, prepared, rng, t);
    }
    return t;
  };
  return parallel_trials<TallyReport>(trials, workers, chunk, std::plus<TallyReport>{});
}

}  // namespace sequd
