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

// Reproducible random substreams.
//
// Every Monte Carlo trial owns a stream keyed by (seed, trial index), so a
// tally never depends on how trials are split across workers. A stream is a
// SplitMix64 sequence (Steele, Lea & Flood 2014) whose starting state is
//
//   mix(seed) ^ mix(trial + 0x9e3779b97f4a7c15)
//
// where mix is the SplitMix64 finalizer. Uniform doubles take the top 53 bits.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace sequd {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class TrialStream {
 public:
  using result_type = std::uint64_t;

  constexpr TrialStream(std::uint64_t seed, std::uint64_t trial)
      : state_(splitmix64_mix(seed) ^ splitmix64_mix(trial + kGoldenGamma)) {}

  constexpr std::uint64_t next() {
    state_ += kGoldenGamma;
    return splitmix64_mix(state_);
  }

  /// Uniform in [0, 1).
  constexpr double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Bernoulli draw with success probability p.
  constexpr bool bernoulli(double p) { return uniform() < p; }

  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }
  constexpr std::uint64_t operator()() { return next(); }

 private:
  std::uint64_t state_;
};

/// Number of workers used when a caller passes 0.
inline unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Splits [0, trials) into contiguous chunks, runs `chunk(begin, end)` on
/// each worker and folds the partial results with `merge` in chunk order.
/// Because per-trial streams are independent of the split, the result is
/// identical for any worker count.
template <class Tally, class ChunkFn, class MergeFn>
Tally parallel_trials(std::uint64_t trials, unsigned workers, ChunkFn chunk, MergeFn merge) {
  if (workers == 0) workers = default_workers();
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(trials, 1)));
  if (workers <= 1) return chunk(std::uint64_t{0}, trials);

  std::vector<Tally> partial(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::uint64_t per = trials / workers;
  const std::uint64_t extra = trials % workers;
  std::uint64_t begin = 0;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t end = begin + per + (w < extra ? 1 : 0);
    pool.emplace_back([&partial, &chunk, w, begin, end] { partial[w] = chunk(begin, end); });
    begin = end;
  }
  for (auto& th : pool) th.join();
  Tally total = partial.front();
  for (unsigned w = 1; w < workers; ++w) total = merge(total, partial[w]);
  return total;
}

}  // namespace sequd
