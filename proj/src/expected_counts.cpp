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

#include "epgm/expected_counts.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "epgm/error.hpp"
#include "epgm/motif.hpp"

namespace epgm {

namespace {

double choose2(double n) { return n * (n - 1) / 2; }
double choose3(double n) { return n * (n - 1) * (n - 2) / 6; }

double log_factorial(int n) { return std::lgamma(n + 1.0); }

// Calls f(counts) for every composition of `total` into `parts` counts.
template <std::size_t N, class F>
void for_each_composition(int total, F&& f) {
  std::array<int, N> c{};
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == N) {
      c[i] = left;
      f(c);
      return;
    }
    for (int x = left; x >= 0; --x) {
      c[i] = x;
      self(self, i + 1, left - x);
    }
  };
  rec(rec, 0, total);
}

template <std::size_t N>
double multinomial(int total, const std::array<int, N>& c) {
  double lg = log_factorial(total);
  for (int x : c) lg -= log_factorial(x);
  return std::round(std::exp(lg));
}

std::vector<TripleTerm> kr_triples(const KrModel& m) {
  std::vector<TripleTerm> out;
  // Pattern bit j is the bit of node j at one position of the index.
  for_each_composition<8>(m.k, [&](const std::array<int, 8>& c) {
    std::array<int, 3> weight{};
    for (int pat = 0; pat < 8; ++pat) {
      for (int j = 0; j < 3; ++j) weight[j] += (pat >> j & 1) * c[pat];
    }
    TripleTerm t;
    for (int e = 0; e < 3; ++e) {
      const int i = kPairNodes[e][0], j = kPairNodes[e][1];
      std::array<int, 4> n{};  // n00, n01, n10, n11 for (node i, node j)
      for (int pat = 0; pat < 8; ++pat) n[(pat >> i & 1) * 2 + (pat >> j & 1)] += c[pat];
      // Equal index vectors: no position where the two bits differ.
      if (n[1] + n[2] == 0) return;
      t.p[e] = kr_pattern_prob(m, n[0], n[1], n[2], n[3]);
    }
    t.cls = weight;
    t.weight = multinomial(m.k, c) / 6;
    out.push_back(t);
  });
  return out;
}

// (sum p, sum p^2) over all unordered pairs.
std::pair<double, double> pair_sums(const EdgeProbModel& m) {
  double s1 = 0, s2 = 0;
  if (const auto* kr = std::get_if<KrModel>(&m)) {
    for_each_composition<4>(kr->k, [&](const std::array<int, 4>& n) {
      if (n[1] + n[2] == 0) return;
      const double count = multinomial(kr->k, n) / 2;
      const double p = kr_pattern_prob(*kr, n[0], n[1], n[2], n[3]);
      s1 += count * p;
      s2 += count * p * p;
    });
    return {s1, s2};
  }
  const ClassStructure cs = class_structure(m);
  const int c = static_cast<int>(cs.num_classes());
  for (int a = 0; a < c; ++a) {
    for (int b = a; b < c; ++b) {
      const double count = class_pair_count(cs, a, b);
      const double p = class_pair_prob(m, a, b);
      s1 += count * p;
      s2 += count * p * p;
    }
  }
  return {s1, s2};
}

}  // namespace

double class_pair_count(const ClassStructure& cs, int a, int b) {
  const double na = static_cast<double>(cs.class_size(a));
  if (a == b) return choose2(na);
  return na * static_cast<double>(cs.class_size(b));
}

std::vector<TripleTerm> class_triples(const EdgeProbModel& m) {
  if (const auto* kr = std::get_if<KrModel>(&m)) return kr_triples(*kr);
  const ClassStructure cs = class_structure(m);
  const int c = static_cast<int>(cs.num_classes());
  std::vector<TripleTerm> out;
  for (int a = 0; a < c; ++a) {
    const double na = static_cast<double>(cs.class_size(a));
    for (int b = a; b < c; ++b) {
      const double nb = static_cast<double>(cs.class_size(b));
      for (int k = b; k < c; ++k) {
        const double nk = static_cast<double>(cs.class_size(k));
        double w;
        if (a == b && b == k) {
          w = choose3(na);
        } else if (a == b) {
          w = choose2(na) * nk;
        } else if (b == k) {
          w = na * choose2(nb);
        } else {
          w = na * nb * nk;
        }
        if (w <= 0) continue;
        TripleTerm t;
        t.weight = w;
        t.cls = {a, b, k};
        t.pair_class = {class_pair_id(a, b, c), class_pair_id(a, k, c), class_pair_id(b, k, c)};
        t.p = {class_pair_prob(m, a, b), class_pair_prob(m, a, k), class_pair_prob(m, b, k)};
        out.push_back(t);
      }
    }
  }
  return out;
}

ExpectedCounts expected_counts(std::span<const TripleTerm> terms, const BindingParams& b) {
  ExpectedCounts out;
  TripleSpec<double> t;
  t.scheme = motif_scheme(b.scheme);
  t.rounds = b.rounds;
  t.residual = b.residual;
  const bool binding = b.scheme != Scheme::kEdgeIndependent;
  for (const TripleTerm& term : terms) {
    t.p = term.p;
    for (int i = 0; i < 3; ++i) t.g[i] = binding ? b.g[term.cls[i]] : 0.0;
    const TripleMoments<double> mom = triple_moments(t);
    out.triangles += term.weight * mom.triangle;
    out.wedges += term.weight * mom.wedges;
  }
  return out;
}

ExpectedCounts expected_counts(const EdgeProbModel& m, const BindingParams& b) {
  validate(b, m);
  const std::vector<TripleTerm> terms = class_triples(m);
  return expected_counts(terms, b);
}

double expected_edges(const EdgeProbModel& m) { return pair_sums(m).first; }

double analytic_overlap(const EdgeProbModel& m) {
  const auto [s1, s2] = pair_sums(m);
  if (!(s1 > 0)) throw NumericalError("overlap is undefined when every edge probability is zero");
  return s2 / s1;
}

}  // namespace epgm
