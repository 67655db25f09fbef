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

// Bob-and-Charlie strategies compared against the sequential one:
//
//   report  Bob measures optimally and announces his result.
//   resend  Bob measures optimally and sends a fresh qubit in the state he
//           found; Charlie measures it optimally.
//   clone   Bob clones probabilistically (success 1/(1+s)); each party
//           measures one clone optimally.
//   seq     one qubit, two observers, no communication.
//
// In every strategy a failure by Bob (or the cloner) ends the round.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sequd/errors.hpp"
#include "sequd/rng.hpp"
#include "sequd/sequential.hpp"
#include "sequd/states.hpp"
#include "sequd/ud_povm.hpp"

namespace sequd {

enum class StrategyKind { kReport = 1, kResend = 2, kClone = 3, kSequential = 4 };

inline std::string_view to_string(StrategyKind k) {
  switch (k) {
    case StrategyKind::kReport: return "1";
    case StrategyKind::kResend: return "2";
    case StrategyKind::kClone: return "3";
    case StrategyKind::kSequential: return "seq";
  }
  return "?";
}

inline StrategyKind parse_strategy_kind(std::string_view name) {
  if (name == "1") return StrategyKind::kReport;
  if (name == "2") return StrategyKind::kResend;
  if (name == "3") return StrategyKind::kClone;
  if (name == "seq") return StrategyKind::kSequential;
  throw DomainError("unknown strategy kind '" + std::string(name) + "' (expected 1, 2, 3 or seq)");
}

inline void require_unit_interval(double s, const char* where) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError(std::string(where) + ": s must lie in [0, 1]");
}

inline double strategy1(double s) {
  require_unit_interval(s, "strategy1");
  return 1.0 - s;
}

inline double strategy2(double s) {
  require_unit_interval(s, "strategy2");
  return (1.0 - s) * (1.0 - s);
}

inline double strategy3(double s) {
  require_unit_interval(s, "strategy3");
  return (1.0 - s) * (1.0 - s) / (1.0 + s);
}

/// (1 - sqrt s)^2, extended to the endpoints.
inline double strategy_sequential(double s) {
  require_unit_interval(s, "strategy_sequential");
  const double r = 1.0 - std::sqrt(s);
  return r * r;
}

/// Probability that at least one party succeeds; identical for all four.
inline double strategy_at_least_one(double s) {
  require_unit_interval(s, "strategy_at_least_one");
  return 1.0 - s;
}

inline double clone_success_probability(double s) { return 1.0 / (1.0 + s); }

inline double strategy_closed_form(StrategyKind kind, double s) {
  switch (kind) {
    case StrategyKind::kReport: return strategy1(s);
    case StrategyKind::kResend: return strategy2(s);
    case StrategyKind::kClone: return strategy3(s);
    case StrategyKind::kSequential: return strategy_sequential(s);
  }
  throw DomainError("unknown strategy kind");
}

/// Event-level Monte Carlo. Trial i uses TrialStream(seed, i); its first
/// uniform picks the prepared state. The sequential strategy delegates to
/// simulate_chain with two observers.
inline TallyReport simulate_strategy(StrategyKind kind, double s, std::uint64_t trials, std::uint64_t seed,
                                     unsigned workers = 0) {
  if (trials < 1) throw DomainError("simulate_strategy: need at least one trial");
  require_interior_overlap(s, "simulate_strategy");
  if (kind == StrategyKind::kSequential) return simulate_chain(build_chain(s, 2), trials, seed, workers);
  if (kind != StrategyKind::kReport && kind != StrategyKind::kResend && kind != StrategyKind::kClone) {
    throw DomainError("simulate_strategy: unknown strategy kind");
  }

  const StatePair pair = make_state_pair(s);
  const UDMeasurement optimal = build_optimal_ud(pair);
  const double p_clone = clone_success_probability(s);

  auto chunk = [&, kind](std::uint64_t begin, std::uint64_t end) {
    TallyReport t;
    t.observer_success.assign(2, 0);
    for (std::uint64_t i = begin; i < end; ++i) {
      TrialStream rng(seed, i);
      const int prepared = rng.uniform() < 0.5 ? 1 : 2;
      ++t.trials;
      ++t.prepared[static_cast<std::size_t>(prepared - 1)];

      int bob = 0;
      int charlie = 0;
      switch (kind) {
        case StrategyKind::kReport:
          bob = apply(optimal, prepared, rng.uniform()).outcome;
          charlie = bob;  // told the result
          break;
        case StrategyKind::kResend:
          bob = apply(optimal, prepared, rng.uniform()).outcome;
          if (bob != 0) charlie = apply(optimal, bob, rng.uniform()).outcome;
          break;
        case StrategyKind::kClone:
          if (rng.bernoulli(p_clone)) {
            bob = apply(optimal, prepared, rng.uniform()).outcome;
            charlie = apply(optimal, prepared, rng.uniform()).outcome;
          }
          break;
        case StrategyKind::kSequential:
          break;
      }
      for (int outcome : {bob, charlie}) {
        if (outcome != 0 && outcome != prepared) ++t.error_count;
      }
      const bool bob_ok = bob == prepared;
      const bool charlie_ok = charlie == prepared;
      if (bob_ok) ++t.observer_success[0];
      if (charlie_ok) ++t.observer_success[1];
      if (bob_ok && charlie_ok) ++t.joint_success[static_cast<std::size_t>(prepared - 1)];
      if (bob_ok || charlie_ok) ++t.at_least_one;
    }
    return t;
  };
  return parallel_trials<TallyReport>(trials, workers, chunk, std::plus<TallyReport>{});
}

struct StrategyCurve {
  std::vector<double> s_grid;
  std::vector<double> p_seq;
  std::vector<double> p1;
  std::vector<double> p2;
  std::vector<double> p3;
  std::vector<double> at_least_one;

  std::size_t size() const { return s_grid.size(); }
};

/// Index of the first grid point violating p1 >= p2 >= p3 >= p_seq, if any.
inline std::optional<std::size_t> find_ordering_violation(const StrategyCurve& c, double tol = 1e-15) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c.p1[i] < c.p2[i] - tol || c.p2[i] < c.p3[i] - tol || c.p3[i] < c.p_seq[i] - tol) return i;
  }
  return std::nullopt;
}

/// Uniform grid of `steps` points from s_min to s_max inclusive.
inline StrategyCurve make_curve(double s_min, double s_max, int steps) {
  if (!(s_min >= 0.0 && s_min < s_max && s_max <= 1.0)) {
    throw DomainError("make_curve: need 0 <= s_min < s_max <= 1");
  }
  if (steps < 2) throw DomainError("make_curve: need at least 2 steps");
  StrategyCurve c;
  const auto n = static_cast<std::size_t>(steps);
  for (std::size_t i = 0; i < n; ++i) {
    // Endpoints are hit exactly.
    const double s = (i + 1 == n) ? s_max : s_min + (s_max - s_min) * static_cast<double>(i) / (steps - 1);
    c.s_grid.push_back(s);
    c.p_seq.push_back(strategy_sequential(s));
    c.p1.push_back(strategy1(s));
    c.p2.push_back(strategy2(s));
    c.p3.push_back(strategy3(s));
    c.at_least_one.push_back(strategy_at_least_one(s));
  }
  if (auto bad = find_ordering_violation(c)) {
    throw std::logic_error("make_curve: strategy ordering violated at s = " + std::to_string(c.s_grid[*bad]));
  }
  return c;
}

}  // namespace sequd
