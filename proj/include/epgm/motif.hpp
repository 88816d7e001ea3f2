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

#include <array>
#include <bit>
#include <cmath>

#include "epgm/dual.hpp"
#include "epgm/pair_prob.hpp"
#include "epgm/realization.hpp"

namespace epgm {

// Pair indices within a node triple (nodes 0, 1, 2).
inline constexpr int kE12 = 0;
inline constexpr int kE13 = 1;
inline constexpr int kE23 = 2;

// Node endpoints of each pair and the node opposite to it.
inline constexpr std::array<std::array<int, 2>, 3> kPairNodes{{{0, 1}, {0, 2}, {1, 2}}};
inline constexpr std::array<int, 3> kOppositeNode{2, 1, 0};

// A labeled edge subset of the triple is a 3-bit mask: bit e set iff pair e
// is present. kTriangle is the full mask.
inline constexpr unsigned kTriangle = 0b111;

enum class MotifScheme { kEdgeIndependent, kMaximal, kLocalBinding, kParallelBinding };

template <class T>
struct TripleSpec {
  std::array<T, 3> p{};  // indexed by pair
  std::array<T, 3> g{};  // indexed by node
  int rounds = 1;
  MotifScheme scheme = MotifScheme::kEdgeIndependent;
  ResidualCoupling residual = ResidualCoupling::kShared;
};

template <class T>
using MotifDistribution3 = std::array<T, 8>;

// Probabilities of the terminal pair partitions reached by local binding
// on one triple: all three pairs in one group, pair e alone with the other
// two grouped, or three singletons.
template <class T>
struct LocalPartition {
  T all{};
  std::array<T, 3> split{};
  T singles{};
};

namespace detail {

// phi(delta) = sum_{t=0}^{R-1} (1 - delta)^t, evaluated without cancellation.
template <class T>
T geometric_sum(const T& delta, int rounds) {
  using std::expm1;
  using std::log1p;
  using std::exp;
  using std::log;
  if (rounds == 1) return T(1);
  const double dv = value_of(delta);
  if (dv <= 0) {
    // phi(0) = R with slope -R(R-1)/2.
    return T(rounds) - delta * (0.5 * rounds * (rounds - 1.0));
  }
  if (dv < 0.5) return -expm1(double(rounds) * log1p(-delta)) / delta;
  if (dv >= 1) return T(1) / delta;
  return (T(1) - exp(double(rounds) * log(T(1) - delta))) / delta;
}

// Pr[exactly the pairs of `present` are on] when the pairs of `group` share
// one uniform draw s and pair e is on iff p_e >= s.
template <class T>
T group_law(const std::array<T, 3>& p, unsigned group, unsigned present) {
  using std::max;
  using std::min;
  T lo(1);   // min over present pairs
  T hi(0);   // max over absent pairs
  bool any_present = false, any_absent = false;
  for (int e = 0; e < 3; ++e) {
    if (!(group >> e & 1u)) continue;
    if (present >> e & 1u) {
      lo = any_present ? min(lo, p[e]) : p[e];
      any_present = true;
    } else {
      hi = any_absent ? max(hi, p[e]) : p[e];
      any_absent = true;
    }
  }
  return max(lo - hi, T(0));
}

template <class T>
T bernoulli_law(const T& p, bool present) {
  return present ? p : T(1) - p;
}

}  // namespace detail

template <class T>
MotifDistribution3<T> motif3_eigm(const TripleSpec<T>& t) {
  MotifDistribution3<T> out;
  for (unsigned mask = 0; mask < 8; ++mask) {
    out[mask] = detail::bernoulli_law(t.p[0], mask & 1u) *
                detail::bernoulli_law(t.p[1], mask >> 1 & 1u) *
                detail::bernoulli_law(t.p[2], mask >> 2 & 1u);
  }
  return out;
}

template <class T>
MotifDistribution3<T> motif3_maximal(const TripleSpec<T>& t) {
  MotifDistribution3<T> out;
  for (unsigned mask = 0; mask < 8; ++mask) out[mask] = detail::group_law(t.p, kTriangle, mask);
  return out;
}

/// Terminal partition probabilities of local binding on one triple.
///
/// Per round the triple sees: all three nodes sampled (a = g1 g2 g3), which
/// merges every still-ungrouped pair into a new group; or exactly the two
/// endpoints of pair e sampled (b_e), which groups e alone if ungrouped.
/// With delta = a + sum(b_e) and phi the R-term geometric sum,
///   Pr[all]       = a phi(delta)
///   Pr[e | rest]  = a (phi(delta - b_e) - phi(delta))
/// and every other outcome leaves three singleton groups.
template <class T>
LocalPartition<T> local_partition(const std::array<T, 3>& g, int rounds) {
  using std::max;
  const T a = g[0] * g[1] * g[2];
  std::array<T, 3> b;
  for (int e = 0; e < 3; ++e) {
    b[e] = g[kPairNodes[e][0]] * g[kPairNodes[e][1]] * (T(1) - g[kOppositeNode[e]]);
  }
  const T delta = a + b[0] + b[1] + b[2];
  const T phi = detail::geometric_sum(delta, rounds);

  LocalPartition<T> out;
  out.all = a * phi;
  T rest = T(1) - out.all;
  for (int e = 0; e < 3; ++e) {
    out.split[e] = a * (detail::geometric_sum(delta - b[e], rounds) - phi);
    rest -= out.split[e];
  }
  out.singles = value_of(rest) < 0 ? T(0) : rest;
  return out;
}

template <class T>
MotifDistribution3<T> motif3_local(const TripleSpec<T>& t) {
  const LocalPartition<T> part = local_partition(t.g, t.rounds);
  const MotifDistribution3<T> all = motif3_maximal(t);
  const MotifDistribution3<T> singles = motif3_eigm(t);
  MotifDistribution3<T> out;
  for (unsigned mask = 0; mask < 8; ++mask) {
    T pr = part.all * all[mask] + part.singles * singles[mask];
    for (int e = 0; e < 3; ++e) {
      const unsigned rest = kTriangle & ~(1u << e);
      pr += part.split[e] * detail::bernoulli_law(t.p[e], mask >> e & 1u) *
            detail::group_law(t.p, rest, mask);
    }
    out[mask] = pr;
  }
  return out;
}

/// Parallel-binding no-show probabilities: q[T] = Pr[no pair of T present],
/// T a pair mask, q[0] = 1.
template <class T>
std::array<T, 8> parallel_absence(const TripleSpec<T>& t) {
  using std::exp;
  using std::log1p;
  using std::max;
  const T a = t.g[0] * t.g[1] * t.g[2];
  std::array<T, 3> b, r, rem;
  for (int e = 0; e < 3; ++e) {
    const T gg = t.g[kPairNodes[e][0]] * t.g[kPairNodes[e][1]];
    b[e] = gg * (T(1) - t.g[kOppositeNode[e]]);
    r[e] = round_prob(t.p[e], gg, t.rounds);
    rem[e] = residual_prob(t.p[e], gg, t.rounds);
  }
  std::array<T, 8> q;
  q[0] = T(1);
  for (unsigned set = 1; set < 8; ++set) {
    // Per round: the sampled node set S adds nothing from `set` iff the
    // shared draw exceeds the largest r over pairs of `set` inside S.
    T r_max(0), rem_max(0), rem_keep(1);
    T add = T(0);
    bool first = true;
    for (int e = 0; e < 3; ++e) {
      if (!(set >> e & 1u)) continue;
      r_max = first ? r[e] : max(r_max, r[e]);
      rem_max = first ? rem[e] : max(rem_max, rem[e]);
      rem_keep *= T(1) - rem[e];
      add += b[e] * r[e];
      first = false;
    }
    add += a * r_max;
    const T per_round = T(1) - add;
    const T rounds_term = value_of(per_round) <= 0
                              ? T(0)
                              : exp(double(t.rounds) * log1p(-add));
    const T residual_term =
        t.residual == ResidualCoupling::kShared ? T(1) - rem_max : rem_keep;
    q[set] = rounds_term * residual_term;
  }
  return q;
}

template <class T>
MotifDistribution3<T> motif3_parallel(const TripleSpec<T>& t) {
  const std::array<T, 8> q = parallel_absence(t);
  MotifDistribution3<T> out;
  for (unsigned mask = 0; mask < 8; ++mask) {
    const unsigned absent = kTriangle & ~mask;
    // Inclusion-exclusion over subsets B of the present set.
    T pr(0);
    for (unsigned sub = mask;; sub = (sub - 1) & mask) {
      const int sign = std::popcount(sub) % 2 == 0 ? 1 : -1;
      pr += double(sign) * q[absent | sub];
      if (sub == 0) break;
    }
    out[mask] = pr;
  }
  return out;
}

template <class T>
MotifDistribution3<T> motif3(const TripleSpec<T>& t) {
  switch (t.scheme) {
    case MotifScheme::kEdgeIndependent:
      return motif3_eigm(t);
    case MotifScheme::kMaximal:
      return motif3_maximal(t);
    case MotifScheme::kLocalBinding:
      return motif3_local(t);
    case MotifScheme::kParallelBinding:
      return motif3_parallel(t);
  }
  return motif3_eigm(t);
}

// Pr[pair e and pair f both present] (e != f).
template <class T>
T pairwise_joint(const MotifDistribution3<T>& dist, int e, int f) {
  const unsigned both = (1u << e) | (1u << f);
  return dist[both] + dist[kTriangle];
}

// Triangle probability and the expected number of wedges (paths of length
// two, closed or open) centered anywhere in the triple.
template <class T>
struct TripleMoments {
  T triangle{};
  T wedges{};
};

// Computed directly from the partition or absence probabilities rather
// than through the full distribution; the fitting loop calls this per
// class triple.
template <class T>
TripleMoments<T> triple_moments(const TripleSpec<T>& t) {
  using std::min;
  const auto& p = t.p;
  TripleMoments<T> m;
  switch (t.scheme) {
    case MotifScheme::kEdgeIndependent:
      m.triangle = p[0] * p[1] * p[2];
      m.wedges = p[0] * p[1] + p[0] * p[2] + p[1] * p[2];
      return m;
    case MotifScheme::kMaximal:
      m.triangle = min(min(p[0], p[1]), p[2]);
      m.wedges = min(p[0], p[1]) + min(p[0], p[2]) + min(p[1], p[2]);
      return m;
    case MotifScheme::kLocalBinding: {
      const LocalPartition<T> part = local_partition(t.g, t.rounds);
      const std::array<T, 3> indep{p[1] * p[2], p[0] * p[2], p[0] * p[1]};  // pairs other than e
      const std::array<T, 3> bound{min(p[1], p[2]), min(p[0], p[2]), min(p[0], p[1])};
      m.triangle = part.all * min(bound[0], p[0]) + part.singles * p[0] * indep[0];
      for (int e = 0; e < 3; ++e) {
        m.triangle += part.split[e] * p[e] * bound[e];
        // Joint of the two pairs other than e: bound when they share a group.
        m.wedges += (part.all + part.split[e]) * bound[e] +
                    (part.singles + part.split[0] + part.split[1] + part.split[2] -
                     part.split[e]) *
                        indep[e];
      }
      return m;
    }
    case MotifScheme::kParallelBinding: {
      const std::array<T, 8> q = parallel_absence(t);
      m.triangle = T(1) - q[1] - q[2] - q[4] + q[3] + q[5] + q[6] - q[7];
      m.wedges = T(3) - 2.0 * (q[1] + q[2] + q[4]) + q[3] + q[5] + q[6];
      return m;
    }
  }
  return m;
}

inline MotifScheme motif_scheme(Scheme s) {
  switch (s) {
    case Scheme::kEdgeIndependent:
      return MotifScheme::kEdgeIndependent;
    case Scheme::kLocalBinding:
      return MotifScheme::kLocalBinding;
    case Scheme::kParallelBinding:
      return MotifScheme::kParallelBinding;
  }
  return MotifScheme::kEdgeIndependent;
}

}  // namespace epgm
