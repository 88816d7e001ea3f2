// Copyright 2026 The EPGM Authors.
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

#include <cmath>
#include <cstdint>
#include <string_view>

namespace epgm {

// Purpose tags for deriving child streams from a master seed.
enum class StreamTag : std::uint64_t {
  kEdgeIndependent = 1,
  kLocalRound = 2,
  kLocalRemainder = 3,
  kParallelRound = 4,
  kParallelResidual = 5,
  kBatch = 6,
  kOracle = 7,
  kDistance = 8,
  kTest = 9,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Child seed = hash(master, tag, index). Streams with distinct (tag, index)
// are statistically independent for all practical purposes.
inline std::uint64_t derive_seed(std::uint64_t master, StreamTag tag, std::uint64_t index) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ static_cast<std::uint64_t>(tag) * 0xd1342543de82ef95ULL);
  return splitmix64(h ^ index);
}

/// 64-bit Mersenne Twister with the few draws the samplers need.
// SplitMix64 generator (the SplittableRandom algorithm). Seeding is a single
// word, which matters because every binding round opens its own stream.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : state_(seed) {}
  Rng(std::uint64_t master, StreamTag tag, std::uint64_t index)
      : state_(derive_seed(master, tag, index)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return UINT64_MAX; }
  result_type operator()() {
    const std::uint64_t out = splitmix64(state_);
    state_ += 0x9e3779b97f4a7c15ULL;
    return out;
  }

  // Uniform on the open interval (0, 1); never returns 0 or 1, so p >= s
  // holds for p = 1 and fails for p = 0 with certainty.
  double uniform() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

  bool bernoulli(double p) { return p >= uniform(); }

  // Number of failures before the next success of a Bernoulli(p) sequence.
  // Requires 0 < p < 1.
  std::uint64_t geometric_skip(double log1m_p) {
    double k = std::floor(std::log(uniform()) / log1m_p);
    return k >= 1.8e19 ? UINT64_MAX : static_cast<std::uint64_t>(k);
  }

 private:
  std::uint64_t state_;
};

}  // namespace epgm
