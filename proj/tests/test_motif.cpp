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

#include <doctest.h>

#include <bit>
#include <cmath>
#include <numeric>

#include "epgm/motif.hpp"
#include "epgm/rng.hpp"

namespace epgm {
namespace {

TripleSpec<double> make_triple(std::array<double, 3> p, std::array<double, 3> g, int rounds,
                               MotifScheme scheme,
                        ResidualCoupling residual = ResidualCoupling::kShared) {
  TripleSpec<double> t;
  t.p = p;
  t.g = g;
  t.rounds = rounds;
  t.scheme = scheme;
  t.residual = residual;
  return t;
}

constexpr unsigned bit(int e) { return 1u << e; }

TEST_CASE("eigm law") {
  auto d = motif3_eigm(make_triple({0.5, 0.5, 0.5}, {}, 1, MotifScheme::kEdgeIndependent));
  CHECK(d[kTriangle] == doctest::Approx(0.125));
  d = motif3_eigm(make_triple({1, 1, 0}, {}, 1, MotifScheme::kEdgeIndependent));
  CHECK(d[bit(kE12) | bit(kE13)] == 1.0);
  d = motif3_eigm(make_triple({0.2, 0.5, 0.7}, {}, 1, MotifScheme::kEdgeIndependent));
  CHECK(d[0] == doctest::Approx(0.12));
}

TEST_CASE("maximal binding follows the prefix law") {
  auto d = motif3_maximal(make_triple({0.2, 0.5, 0.7}, {}, 1, MotifScheme::kMaximal));
  CHECK(d[0] == doctest::Approx(0.3));
  CHECK(d[bit(kE23)] == doctest::Approx(0.2));
  CHECK(d[bit(kE23) | bit(kE13)] == doctest::Approx(0.3));
  CHECK(d[kTriangle] == doctest::Approx(0.2));
  d = motif3_maximal(make_triple({0.4, 0.4, 0.4}, {}, 1, MotifScheme::kMaximal));
  CHECK(d[kTriangle] == doctest::Approx(0.4));
  CHECK(d[0] == doctest::Approx(0.6));
  for (unsigned m = 1; m < 7; ++m) CHECK(d[m] == 0.0);
}

TEST_CASE("local binding single round") {
  auto d = motif3_local(make_triple({0.5, 0.5, 0.5}, {0.5, 0.5, 0.5}, 1, MotifScheme::kLocalBinding));
  CHECK(d[kTriangle] == doctest::Approx(0.171875));
}

TEST_CASE("local binding two rounds, hand-expanded") {
  // With R = 2 the only way to split is (pair e alone, then all three).
  const double g = 0.5;
  const double a = g * g * g, b = g * g * (1 - g);
  auto part = local_partition<double>({g, g, g}, 2);
  CHECK(part.all == doctest::Approx(a + (1 - a - 3 * b) * a));
  for (int e = 0; e < 3; ++e) CHECK(part.split[e] == doctest::Approx(b * a));
  CHECK(part.all + part.split[0] + part.split[1] + part.split[2] + part.singles ==
        doctest::Approx(1.0));
}

// Round-by-round evolution of (ungrouped pairs, pairs merged into the
// multi-pair group), started from nothing grouped.
LocalPartition<double> iterate_partition(const std::array<double, 3>& g, int rounds) {
  std::array<std::array<double, 8>, 8> state{};
  state[7][0] = 1;
  const double all = g[0] * g[1] * g[2];
  std::array<double, 3> only{};
  for (int e = 0; e < 3; ++e) {
    only[e] = g[kPairNodes[e][0]] * g[kPairNodes[e][1]] * (1 - g[kOppositeNode[e]]);
  }
  for (int r = 0; r < rounds; ++r) {
    std::array<std::array<double, 8>, 8> next{};
    for (unsigned u = 0; u < 8; ++u) {
      for (unsigned m = 0; m < 8; ++m) {
        const double w = state[u][m];
        if (w == 0) continue;
        double stay = 1 - all;
        next[0][std::popcount(u) >= 2 ? u : m] += w * all;
        for (int e = 0; e < 3; ++e) {
          stay -= only[e];
          next[u & ~bit(e)][m] += w * only[e];
        }
        next[u][m] += w * stay;
      }
    }
    state = next;
  }
  LocalPartition<double> out;
  for (unsigned u = 0; u < 8; ++u) {
    for (unsigned m = 0; m < 8; ++m) {
      if (m == 7) {
        out.all += state[u][m];
      } else if (std::popcount(m) == 2) {
        out.split[std::countr_zero(~m & 7u)] += state[u][m];
      } else {
        out.singles += state[u][m];
      }
    }
  }
  return out;
}

TEST_CASE("local partition closed form matches round-by-round iteration") {
  Rng rng(5, StreamTag::kTest, 40);
  for (int i = 0; i < 200; ++i) {
    const std::array<double, 3> g{rng.uniform(), rng.uniform(), rng.uniform()};
    const int rounds = 1 + static_cast<int>(rng() % 60);
    const auto closed = local_partition<double>(g, rounds);
    const auto iterated = iterate_partition(g, rounds);
    CHECK(std::abs(closed.all - iterated.all) <= 1e-12);
    CHECK(std::abs(closed.singles - iterated.singles) <= 1e-12);
    for (int e = 0; e < 3; ++e) CHECK(std::abs(closed.split[e] - iterated.split[e]) <= 1e-12);
  }
}

TEST_CASE("local partition with an unsampled node never merges its pairs") {
  auto part = local_partition<double>({0.7, 0.4, 0.0}, 5);
  CHECK(part.all == 0.0);
  CHECK(part.split[0] == 0.0);
  CHECK(part.split[1] == 0.0);
  CHECK(part.split[2] == 0.0);
  CHECK(part.singles == doctest::Approx(1.0));
}

TEST_CASE("parallel binding reduces to maximal at R = 1, g = 1") {
  auto t = make_triple({0.3, 0.6, 0.9}, {1, 1, 1}, 1, MotifScheme::kParallelBinding);
  auto d = motif3_parallel(t);
  auto m = motif3_maximal(t);
  for (int k = 0; k < 8; ++k) CHECK(d[k] == doctest::Approx(m[k]).epsilon(1e-12));
}

TEST_CASE("distribution invariants over random configurations") {
  Rng rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    for (auto scheme : {MotifScheme::kEdgeIndependent, MotifScheme::kMaximal,
                        MotifScheme::kLocalBinding, MotifScheme::kParallelBinding}) {
      for (auto residual : {ResidualCoupling::kShared, ResidualCoupling::kIndependent}) {
        TripleSpec<double> t;
        for (auto& p : t.p) p = rng.uniform();
        for (auto& g : t.g) g = rng.uniform();
        if (trial % 5 == 0) t.p[1] = t.p[0];
        t.rounds = 1 + static_cast<int>(rng() % 40);
        t.scheme = scheme;
        t.residual = residual;
        const auto d = motif3(t);
        double total = 0;
        for (double x : d) {
          CHECK(x >= -1e-12);
          CHECK(x <= 1 + 1e-12);
          total += x;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
        for (int e = 0; e < 3; ++e) {
          double marginal = 0;
          for (unsigned m = 0; m < 8; ++m) {
            if (m >> e & 1u) marginal += d[m];
          }
          CHECK(marginal == doctest::Approx(t.p[e]).epsilon(1e-10));
        }
        const double indep = t.p[0] * t.p[1] * t.p[2];
        CHECK(d[kTriangle] >= indep - 1e-12);
        for (int e = 0; e < 3; ++e) {
          for (int f = e + 1; f < 3; ++f) CHECK(pairwise_joint(d, e, f) >= t.p[e] * t.p[f] - 1e-12);
        }
        const auto mom = triple_moments(t);
        CHECK(mom.triangle == doctest::Approx(d[kTriangle]).epsilon(1e-12));
        const double wedges = pairwise_joint(d, kE12, kE13) + pairwise_joint(d, kE12, kE23) +
                              pairwise_joint(d, kE13, kE23);
        CHECK(mom.wedges == doctest::Approx(wedges).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("pairwise joint extremes") {
  auto t = make_triple({0.2, 0.5, 0.7}, {}, 1, MotifScheme::kEdgeIndependent);
  CHECK(pairwise_joint(motif3(t), kE12, kE23) == doctest::Approx(0.2 * 0.7));
  t.scheme = MotifScheme::kMaximal;
  CHECK(pairwise_joint(motif3(t), kE13, kE23) == doctest::Approx(0.5));
}

TEST_CASE("parallel pairwise joint matches the absence identity") {
  auto t = make_triple({0.25, 0.5, 0.8}, {0.3, 0.6, 0.9}, 4, MotifScheme::kParallelBinding);
  const auto q = parallel_absence(t);
  const auto d = motif3(t);
  CHECK(pairwise_joint(d, kE12, kE13) ==
        doctest::Approx(1 - (1 - t.p[0]) - (1 - t.p[1]) + q[bit(kE12) | bit(kE13)]));
}

}  // namespace
}  // namespace epgm
