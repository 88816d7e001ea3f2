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

#include "support/clustered_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "epgm/rng.hpp"

namespace epgm::testing {

Graph clustered_graph(std::uint64_t seed) {
  constexpr NodeId kNodes = 2000;
  constexpr int kBackgroundEdges = 2500;
  constexpr int kCommunities = 14;
  constexpr double kDensity = 0.78;

  Rng rng(seed, StreamTag::kTest, 0);
  std::vector<Edge> edges;

  std::vector<double> weight(kNodes);
  for (double& w : weight) w = std::min(2.0 * std::pow(rng.uniform(), -1.0 / 1.5), 150.0);
  std::discrete_distribution<NodeId> pick(weight.begin(), weight.end());
  while (edges.size() < kBackgroundEdges) {
    const NodeId u = pick(rng), v = pick(rng);
    if (u != v) edges.emplace_back(u, v);
  }

  std::vector<NodeId> order(kNodes);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::size_t next = 0;
  for (int c = 0; c < kCommunities; ++c) {
    const std::size_t size = 35 + rng() % 31;
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = i + 1; j < size; ++j) {
        if (rng.bernoulli(kDensity)) edges.emplace_back(order[next + i], order[next + j]);
      }
    }
    next += size;
  }
  return Graph(kNodes, std::move(edges));
}

}  // namespace epgm::testing
