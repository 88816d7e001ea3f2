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

#include "epgm/realization.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include <omp.h>

#include "epgm/error.hpp"
#include "epgm/rng.hpp"

namespace epgm {

namespace {

// Per-pair p, r and p_rem for one (model, binding) combination. Block
// models (ER/CL/SB) tabulate by class pair; KR tabulates by
// (popcount u, popcount v, popcount u&v), which determines p for a
// symmetric seed.
class PairTable {
 public:
  PairTable(const EdgeProbModel& m, const Eigen::VectorXd& class_g, int rounds)
      : classes_(class_structure(m)), n_(epgm::num_nodes(m)) {
    const int c = static_cast<int>(classes_.num_classes());
    const bool use_g = class_g.size() == c;
    auto gg_of = [&](int a, int b) { return use_g ? class_g[a] * class_g[b] : 0.0; };
    if (const auto* kr = std::get_if<KrModel>(&m)) {
      kr_k_ = kr->k;
      const int w = kr_k_ + 1;
      kr_p_.assign(w * w * w, 0.0);
      kr_r_ = kr_p_;
      kr_rem_ = kr_p_;
      for (int wu = 0; wu < w; ++wu) {
        for (int wv = 0; wv < w; ++wv) {
          for (int n11 = 0; n11 <= std::min(wu, wv); ++n11) {
            const int n10 = wu - n11, n01 = wv - n11, n00 = kr_k_ - n10 - n01 - n11;
            if (n00 < 0) continue;
            const double p = kr_pattern_prob(*kr, n00, n01, n10, n11);
            const std::size_t idx = kr_index(wu, wv, n11);
            kr_p_[idx] = p;
            if (rounds > 0) {
              kr_r_[idx] = round_prob(p, gg_of(wu, wv), rounds);
              kr_rem_[idx] = residual_prob(p, gg_of(wu, wv), rounds);
            }
          }
        }
      }
      return;
    }
    blocked_ = true;
    p_.resize(c, c);
    r_ = Eigen::MatrixXd::Zero(c, c);
    rem_ = Eigen::MatrixXd::Zero(c, c);
    for (int a = 0; a < c; ++a) {
      for (int b = 0; b < c; ++b) {
        p_(a, b) = class_pair_prob(m, a, b);
        if (rounds > 0) {
          r_(a, b) = round_prob(p_(a, b), gg_of(a, b), rounds);
          rem_(a, b) = residual_prob(p_(a, b), gg_of(a, b), rounds);
        }
      }
    }
  }

  enum class Field { kProb, kRound, kResidual };

  const ClassStructure& classes() const { return classes_; }
  std::size_t num_nodes() const { return n_; }
  bool blocked() const { return blocked_; }

  double get(Field f, NodeId u, NodeId v) const {
    if (blocked_) return matrix(f)(classes_.class_of[u], classes_.class_of[v]);
    const std::size_t idx =
        kr_index(std::popcount(u), std::popcount(v), std::popcount(u & v));
    switch (f) {
      case Field::kProb:
        return kr_p_[idx];
      case Field::kRound:
        return kr_r_[idx];
      case Field::kResidual:
        return kr_rem_[idx];
    }
    return 0;
  }

  const Eigen::MatrixXd& matrix(Field f) const {
    switch (f) {
      case Field::kRound:
        return r_;
      case Field::kResidual:
        return rem_;
      default:
        return p_;
    }
  }

 private:
  std::size_t kr_index(int wu, int wv, int n11) const {
    const std::size_t w = kr_k_ + 1;
    return (static_cast<std::size_t>(wu) * w + wv) * w + n11;
  }

  ClassStructure classes_;
  std::size_t n_;
  bool blocked_ = false;
  Eigen::MatrixXd p_, r_, rem_;
  int kr_k_ = 0;
  std::vector<double> kr_p_, kr_r_, kr_rem_;
};

// Independent node sampling with Pr[v in V_s] = g(class of v), by geometric
// skipping within each class.
void sample_nodes(const PairTable& table, const Eigen::VectorXd& class_g, Rng& rng,
                  std::vector<NodeId>& out) {
  out.clear();
  const auto& members = table.classes().members;
  for (std::size_t c = 0; c < members.size(); ++c) {
    const double g = class_g[static_cast<Eigen::Index>(c)];
    const auto& list = members[c];
    if (g <= 0 || list.empty()) continue;
    if (g >= 1) {
      out.insert(out.end(), list.begin(), list.end());
      continue;
    }
    const double log1m = std::log1p(-g);
    std::uint64_t i = rng.geometric_skip(log1m);
    while (i < list.size()) {
      out.push_back(list[i]);
      std::uint64_t skip = rng.geometric_skip(log1m);
      if (skip >= list.size()) break;
      i += 1 + skip;
    }
  }
}

// Visits pairs of a block of `count` pairs chosen independently with
// probability q, in increasing index order.
template <class Emit>
void skip_sample(std::uint64_t count, double q, Rng& rng, Emit&& emit) {
  if (q <= 0 || count == 0) return;
  if (q >= 1) {
    for (std::uint64_t i = 0; i < count; ++i) emit(i);
    return;
  }
  const double log1m = std::log1p(-q);
  std::uint64_t i = rng.geometric_skip(log1m);
  while (i < count) {
    emit(i);
    std::uint64_t skip = rng.geometric_skip(log1m);
    if (skip >= count - i) break;
    i += 1 + skip;
  }
}

// Every pair independently with the probability in `field`. Block models
// skip-sample each class-pair block; KR visits every pair.
template <class Emit>
void for_each_independent(const PairTable& table, PairTable::Field field, Rng& rng, Emit&& emit) {
  if (!table.blocked()) {
    const auto n = static_cast<NodeId>(table.num_nodes());
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        if (table.get(field, u, v) >= rng.uniform()) emit(Edge(u, v));
      }
    }
    return;
  }
  const auto& members = table.classes().members;
  const auto& q = table.matrix(field);
  const int c = static_cast<int>(members.size());
  for (int a = 0; a < c; ++a) {
    const auto& ma = members[a];
    // Within class a: pairs (i, j), i < j, in row-major order.
    {
      const std::uint64_t m = ma.size();
      std::uint64_t row = 0, row_start = 0;
      skip_sample(num_pairs(m), q(a, a), rng, [&](std::uint64_t idx) {
        while (idx >= row_start + (m - row - 1)) {
          row_start += m - row - 1;
          ++row;
        }
        const std::uint64_t col = row + 1 + (idx - row_start);
        emit(Edge(ma[row], ma[col]));
      });
    }
    for (int b = a + 1; b < c; ++b) {
      const auto& mb = members[b];
      skip_sample(static_cast<std::uint64_t>(ma.size()) * mb.size(), q(a, b), rng,
                  [&](std::uint64_t idx) {
                    emit(Edge(ma[idx / mb.size()], mb[idx % mb.size()]));
                  });
    }
  }
}

// The pairs among `nodes`, each with its `field` probability.
void pairs_within(const PairTable& table, PairTable::Field field,
                  const std::vector<NodeId>& nodes, std::vector<WeightedPair>& out) {
  out.clear();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      out.push_back({Edge(nodes[i], nodes[j]), table.get(field, nodes[i], nodes[j])});
    }
  }
}

void sort_unique(std::vector<Edge>& edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

// A dense bit per node pair marking pairs that already belong to a group.
class PairBitset {
 public:
  explicit PairBitset(std::uint64_t n) : n_(n), bits_((num_pairs(n) + 63) / 64, 0) {}
  bool test_and_set(const Edge& e) {
    const std::uint64_t idx = pair_index(e.u, e.v, n_);
    std::uint64_t& word = bits_[idx >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (idx & 63);
    const bool was = word & bit;
    word |= bit;
    return was;
  }
  bool test(const Edge& e) const {
    const std::uint64_t idx = pair_index(e.u, e.v, n_);
    return bits_[idx >> 6] >> (idx & 63) & 1u;
  }

 private:
  std::uint64_t n_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace

void validate(const BindingParams& b, const EdgeProbModel& m) {
  if (b.scheme == Scheme::kEdgeIndependent) return;
  const auto c = static_cast<Eigen::Index>(num_classes(m));
  if (b.g.size() != c) {
    throw DataError("binding g has " + std::to_string(b.g.size()) + " values; model has " +
                    std::to_string(c) + " classes");
  }
  for (Eigen::Index i = 0; i < c; ++i) {
    if (!(b.g[i] >= 0.0 && b.g[i] <= 1.0)) throw DataError("g values must lie in [0, 1]");
  }
  if (b.rounds < 0) throw DataError("R must be nonnegative");
  if (b.scheme == Scheme::kParallelBinding && b.rounds < 1) {
    throw DataError("parallel binding needs R >= 1");
  }
}

std::vector<Edge> bind_group(std::span<const WeightedPair> group, double s) {
  std::vector<Edge> out;
  for (const WeightedPair& wp : group) {
    if (wp.prob >= s) out.push_back(wp.pair);
  }
  return out;
}

std::vector<Edge> realize_edge_independent(const EdgeProbModel& m, std::uint64_t seed) {
  const PairTable table(m, Eigen::VectorXd(), 0);
  Rng rng(seed, StreamTag::kEdgeIndependent, 0);
  std::vector<Edge> edges;
  for_each_independent(table, PairTable::Field::kProb, rng,
                       [&](const Edge& e) { edges.push_back(e); });
  sort_unique(edges);
  return edges;
}

std::vector<Edge> realize_local_binding(const EdgeProbModel& m, const BindingParams& b,
                                        std::uint64_t seed) {
  validate(b, m);
  const PairTable table(m, b.g, 0);
  const std::uint64_t n = table.num_nodes();
  const std::uint64_t total = num_pairs(n);
  PairBitset grouped(n);
  std::uint64_t grouped_count = 0;
  std::vector<Edge> edges;
  std::vector<NodeId> nodes;
  std::vector<WeightedPair> group;
  for (int round = 0; round < b.rounds; ++round) {
    if (grouped_count == total) break;  // pairs exhausted
    Rng rng(seed, StreamTag::kLocalRound, static_cast<std::uint64_t>(round));
    sample_nodes(table, b.g, rng, nodes);
    const double s = rng.uniform();
    pairs_within(table, PairTable::Field::kProb, nodes, group);
    std::erase_if(group, [&](const WeightedPair& wp) { return grouped.test_and_set(wp.pair); });
    grouped_count += group.size();
    auto bound = bind_group(group, s);
    edges.insert(edges.end(), bound.begin(), bound.end());
  }
  // Remaining pairs are singleton groups, i.e. independent Bernoulli(p).
  // Sampling every pair and discarding grouped ones has the same law.
  if (grouped_count < total) {
    Rng rng(seed, StreamTag::kLocalRemainder, 0);
    for_each_independent(table, PairTable::Field::kProb, rng, [&](const Edge& e) {
      if (!grouped.test(e)) edges.push_back(e);
    });
  }
  sort_unique(edges);
  return edges;
}

std::vector<Edge> realize_parallel_binding(const EdgeProbModel& m, const BindingParams& b,
                                           std::uint64_t seed, int threads) {
  validate(b, m);
  const PairTable table(m, b.g, b.rounds);
  std::vector<std::vector<Edge>> per_round(b.rounds);
#pragma omp parallel for num_threads(std::max(threads, 1)) schedule(dynamic) if (threads > 1)
  for (int round = 0; round < b.rounds; ++round) {
    Rng rng(seed, StreamTag::kParallelRound, static_cast<std::uint64_t>(round));
    std::vector<NodeId> nodes;
    std::vector<WeightedPair> group;
    sample_nodes(table, b.g, rng, nodes);
    const double s = rng.uniform();
    pairs_within(table, PairTable::Field::kRound, nodes, group);
    per_round[round] = bind_group(group, s);
  }
  std::vector<Edge> edges;
  for (auto& part : per_round) edges.insert(edges.end(), part.begin(), part.end());

  Rng rng(seed, StreamTag::kParallelResidual, 0);
  if (b.residual == ResidualCoupling::kIndependent) {
    for_each_independent(table, PairTable::Field::kResidual, rng,
                         [&](const Edge& e) { edges.push_back(e); });
  } else {
    const double s = rng.uniform();
    if (table.blocked()) {
      const auto& members = table.classes().members;
      const auto& rem = table.matrix(PairTable::Field::kResidual);
      for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t c = a; c < members.size(); ++c) {
          if (rem(a, c) < s) continue;
          for (std::size_t i = 0; i < members[a].size(); ++i) {
            for (std::size_t j = (a == c ? i + 1 : 0); j < members[c].size(); ++j) {
              edges.emplace_back(members[a][i], members[c][j]);
            }
          }
        }
      }
    } else {
      const auto n = static_cast<NodeId>(table.num_nodes());
      for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
          if (table.get(PairTable::Field::kResidual, u, v) >= s) edges.emplace_back(u, v);
        }
      }
    }
  }
  sort_unique(edges);
  return edges;
}

std::vector<Edge> realize(const EdgeProbModel& m, const BindingParams& b, std::uint64_t seed,
                          int threads) {
  switch (b.scheme) {
    case Scheme::kEdgeIndependent:
      return realize_edge_independent(m, seed);
    case Scheme::kLocalBinding:
      return realize_local_binding(m, b, seed);
    case Scheme::kParallelBinding:
      return realize_parallel_binding(m, b, seed, threads);
  }
  return {};
}

Graph sample_eigm(const EdgeProbModel& m, RngSpec rng) {
  return Graph(num_nodes(m), realize_edge_independent(m, rng.seed));
}

Graph sample_local_binding(const EdgeProbModel& m, const BindingParams& b, RngSpec rng) {
  if (b.scheme != Scheme::kLocalBinding) throw DataError("scheme must be local binding");
  return Graph(num_nodes(m), realize_local_binding(m, b, rng.seed));
}

Graph sample_parallel_binding(const EdgeProbModel& m, const BindingParams& b, RngSpec rng,
                              int threads) {
  if (b.scheme != Scheme::kParallelBinding) throw DataError("scheme must be parallel binding");
  return Graph(num_nodes(m), realize_parallel_binding(m, b, rng.seed, threads));
}

std::vector<Graph> generate_batch(const EdgeProbModel& m, const BindingParams& b,
                                  std::size_t count, RngSpec rng, int threads) {
  validate(b, m);
  std::vector<Graph> out(count);
  const auto n = static_cast<long long>(count);
#pragma omp parallel for num_threads(std::max(threads, 1)) schedule(dynamic) if (threads > 1)
  for (long long i = 0; i < n; ++i) {
    const std::uint64_t seed = derive_seed(rng.seed, StreamTag::kBatch, static_cast<std::uint64_t>(i));
    out[i] = Graph(num_nodes(m), realize(m, b, seed, 1));
  }
  return out;
}

Eigen::VectorXd node_sampling_probs(const EdgeProbModel& m, const BindingParams& b) {
  const ClassStructure cs = class_structure(m);
  Eigen::VectorXd g(static_cast<Eigen::Index>(cs.class_of.size()));
  for (std::size_t v = 0; v < cs.class_of.size(); ++v) {
    g[static_cast<Eigen::Index>(v)] = b.g.size() ? b.g[cs.class_of[v]] : 0.0;
  }
  return g;
}

}  // namespace epgm
