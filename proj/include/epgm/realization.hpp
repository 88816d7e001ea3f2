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

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "epgm/graph.hpp"
#include "epgm/models.hpp"
#include "epgm/pair_prob.hpp"

namespace epgm {

enum class Scheme { kEdgeIndependent, kLocalBinding, kParallelBinding };
enum class ResidualCoupling { kShared, kIndependent };

inline constexpr int kDefaultLocalRounds = 1000;
inline constexpr int kDefaultParallelRounds = 32;

struct BindingParams {
  Scheme scheme = Scheme::kEdgeIndependent;
  int rounds = 0;
  Eigen::VectorXd g;  // one node-sampling probability per class
  ResidualCoupling residual = ResidualCoupling::kShared;
};

// Throws DataError when g is out of [0,1], has the wrong length for the
// model, or R is invalid for the scheme.
void validate(const BindingParams& b, const EdgeProbModel& m);

struct RngSpec {
  std::uint64_t seed = 0;
};

// A pair together with the probability used to realize it.
struct WeightedPair {
  Edge pair;
  double prob = 0;
};

// One binding group: every pair whose probability is at least s.
std::vector<Edge> bind_group(std::span<const WeightedPair> group, double s);

// Edge sets as sorted vectors; these are the primitives the graph-level
// samplers wrap and that the oracles drive directly.
std::vector<Edge> realize_edge_independent(const EdgeProbModel& m, std::uint64_t seed);
std::vector<Edge> realize_local_binding(const EdgeProbModel& m, const BindingParams& b,
                                        std::uint64_t seed);
std::vector<Edge> realize_parallel_binding(const EdgeProbModel& m, const BindingParams& b,
                                           std::uint64_t seed, int threads = 1);
std::vector<Edge> realize(const EdgeProbModel& m, const BindingParams& b, std::uint64_t seed,
                          int threads = 1);

Graph sample_eigm(const EdgeProbModel& m, RngSpec rng);
Graph sample_local_binding(const EdgeProbModel& m, const BindingParams& b, RngSpec rng);
Graph sample_parallel_binding(const EdgeProbModel& m, const BindingParams& b, RngSpec rng,
                              int threads = 1);

// `count` graphs, graph i drawn from the stream derived from (seed, i).
// Output is independent of `threads`.
std::vector<Graph> generate_batch(const EdgeProbModel& m, const BindingParams& b,
                                  std::size_t count, RngSpec rng, int threads = 1);

// Per-node g expanded from per-class values.
Eigen::VectorXd node_sampling_probs(const EdgeProbModel& m, const BindingParams& b);

}  // namespace epgm
