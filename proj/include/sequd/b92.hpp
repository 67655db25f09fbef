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

// B92-style key distribution from Alice to both Bob and Charlie.
//
// Bit 0 is sent as psi1 and bit 1 as psi2. In two-qubit mode Alice sends
// one copy to each receiver and both measure optimally. In sequential mode
// a single qubit passes through Bob's intermediate measurement and then
// Charlie's optimal one.
//
// An intercepting Eve measures optimally on the Alice -> Bob link (and the
// Alice -> Charlie link in two-qubit mode). She forwards the state she
// identified, or a uniform guess when she failed everywhere. If only one of
// her two attempts succeeds she forwards that result on both links.

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "sequd/errors.hpp"
#include "sequd/rng.hpp"
#include "sequd/sequential.hpp"
#include "sequd/states.hpp"
#include "sequd/ud_povm.hpp"

namespace sequd {

enum class SessionMode { kTwoQubit, kOneQubitSequential };
enum class EveMode { kNone, kInterceptUD };

inline std::string_view to_string(SessionMode m) {
  return m == SessionMode::kTwoQubit ? "two_qubit" : "one_qubit_sequential";
}
inline std::string_view to_string(EveMode e) { return e == EveMode::kNone ? "none" : "intercept_ud"; }

inline SessionMode parse_session_mode(std::string_view s) {
  if (s == "two_qubit") return SessionMode::kTwoQubit;
  if (s == "one_qubit_sequential") return SessionMode::kOneQubitSequential;
  throw DomainError("mode must be 'two_qubit' or 'one_qubit_sequential', got '" + std::string(s) + "'");
}

inline EveMode parse_eve_mode(std::string_view s) {
  if (s == "none") return EveMode::kNone;
  if (s == "intercept_ud") return EveMode::kInterceptUD;
  throw DomainError("eve must be 'none' or 'intercept_ud', got '" + std::string(s) + "'");
}

struct SessionConfig {
  double s = 0.0;
  std::uint64_t rounds = 0;
  SessionMode mode = SessionMode::kOneQubitSequential;
  EveMode eve = EveMode::kNone;
  std::uint64_t seed = 0;

  void validate() const {
    if (rounds < 1) throw DomainError("rounds must be >= 1");
    require_interior_overlap(s, "SessionConfig");
  }
};

struct KeyReport {
  std::uint64_t rounds = 0;
  std::uint64_t both_sifted = 0;
  std::uint64_t bob_sifted = 0;
  std::uint64_t charlie_sifted = 0;
  std::uint64_t eve_known = 0;
  std::uint64_t errors_bob = 0;
  std::uint64_t errors_charlie = 0;

  double rate(std::uint64_t count) const {
    return rounds == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(rounds);
  }
  double stderr_of(std::uint64_t count) const {
    const double p = rate(count);
    return rounds == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(rounds));
  }

  KeyReport& operator+=(const KeyReport& o) {
    rounds += o.rounds;
    both_sifted += o.both_sifted;
    bob_sifted += o.bob_sifted;
    charlie_sifted += o.charlie_sifted;
    eve_known += o.eve_known;
    errors_bob += o.errors_bob;
    errors_charlie += o.errors_charlie;
    return *this;
  }
  friend KeyReport operator+(KeyReport a, const KeyReport& b) { return a += b; }
  bool operator==(const KeyReport&) const = default;
};

/// Eve's closed-form chance of learning the bit: 1 - s on the single link of
/// the sequential mode, 1 - s^2 with two independent attempts.
inline double eve_knowledge_rate(const SessionConfig& cfg) {
  if (cfg.eve != EveMode::kInterceptUD) throw DomainError("eve_knowledge_rate: no eavesdropper configured");
  require_interior_overlap(cfg.s, "eve_knowledge_rate");
  return cfg.mode == SessionMode::kOneQubitSequential ? 1.0 - cfg.s : 1.0 - cfg.s * cfg.s;
}

/// Closed-form rate at which both receivers sift a bit without Eve.
inline double both_sifted_rate(const SessionConfig& cfg) {
  require_interior_overlap(cfg.s, "both_sifted_rate");
  if (cfg.mode == SessionMode::kTwoQubit) return (1.0 - cfg.s) * (1.0 - cfg.s);
  const double r = 1.0 - std::sqrt(cfg.s);
  return r * r;
}

/// Round i uses TrialStream(seed, i). Draw order: Alice's bit, Eve's
/// measurement(s) and guess, Bob, Charlie.
inline KeyReport run_session(const SessionConfig& cfg, unsigned workers = 0) {
  cfg.validate();
  const StatePair pair = make_state_pair(cfg.s);
  const UDMeasurement optimal = build_optimal_ud(pair);
  const ChainSpec chain = build_chain(cfg.s, 2);
  const UDMeasurement& bob_sequential = chain.stages[0];
  const UDMeasurement& charlie_sequential = chain.stages[1];

  auto chunk = [&](std::uint64_t begin, std::uint64_t end) {
    KeyReport r;
    for (std::uint64_t i = begin; i < end; ++i) {
      TrialStream rng(cfg.seed, i);
      ++r.rounds;
      const int sent = rng.uniform() < 0.5 ? 1 : 2;

      // States arriving at Bob and Charlie (Charlie's is unused in
      // sequential mode, where he gets Bob's post-measurement qubit).
      int to_bob = sent;
      int to_charlie = sent;
      if (cfg.eve == EveMode::kInterceptUD) {
        int learned = apply(optimal, sent, rng.uniform()).outcome;
        if (cfg.mode == SessionMode::kTwoQubit) {
          const int second = apply(optimal, sent, rng.uniform()).outcome;
          if (learned == 0) learned = second;
        }
        int forwarded = learned;
        if (learned != 0) {
          ++r.eve_known;
        } else {
          forwarded = rng.uniform() < 0.5 ? 1 : 2;
        }
        to_bob = forwarded;
        to_charlie = forwarded;
      }

      int bob = 0;
      int charlie = 0;
      if (cfg.mode == SessionMode::kTwoQubit) {
        bob = apply_to_state(optimal, pair.state(to_bob), rng.uniform()).outcome;
        charlie = apply_to_state(optimal, pair.state(to_charlie), rng.uniform()).outcome;
      } else {
        auto first = apply_to_state(bob_sequential, pair.state(to_bob), rng.uniform());
        bob = first.outcome;
        charlie = apply_to_state(charlie_sequential, first.post_state, rng.uniform()).outcome;
      }

      if (bob != 0) {
        ++r.bob_sifted;
        if (bob != sent) ++r.errors_bob;
      }
      if (charlie != 0) {
        ++r.charlie_sifted;
        if (charlie != sent) ++r.errors_charlie;
      }
      if (bob != 0 && charlie != 0) ++r.both_sifted;
    }
    return r;
  };
  return parallel_trials<KeyReport>(cfg.rounds, workers, chunk, std::plus<KeyReport>{});
}

}  // namespace sequd
