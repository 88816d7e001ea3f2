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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "epgm/graph.hpp"

namespace epgm {

// One point of a complementary cumulative count: `count` items have a value
// of at least `at`.
struct CcdfPoint {
  std::uint64_t at = 0;
  double count = 0;
};

struct GraphStats {
  std::uint64_t num_nodes = 0;
  std::uint64_t num_edges = 0;
  std::uint64_t triangle_count = 0;
  std::uint64_t wedge_count = 0;  // sum over v of C(d(v), 2)
  double gcc = 0;                 // 3 * triangles / wedges
  double alcc = 0;                // mean local clustering over d(v) >= 2
  std::vector<CcdfPoint> degree_ccdf;    // k = 1..max degree
  std::vector<CcdfPoint> distance_ccdf;  // d = 1..diameter of the LCC
  std::uint64_t lcc_size = 0;
};

struct StatsOptions {
  // Number of BFS sources in the largest component; all nodes when unset.
  // Sampled counts are rescaled to the full component.
  std::optional<std::size_t> distance_sources;
  std::uint64_t distance_seed = 1;
  bool distances = true;
};

// Per-node triangle counts; entry v is the number of triangles through v.
std::vector<std::uint64_t> triangles_per_node(const Graph& g);
std::uint64_t count_triangles(const Graph& g);

GraphStats compute_stats(const Graph& g, const StatsOptions& opts = {});

// Sample analogue of the overlap: mean pairwise |E' ∩ E''| over mean |E|.
// Throws NumericalError when the mean edge count is zero.
double empirical_overlap(std::span<const Graph> graphs);

// Number of shared edges between two graphs on the same node set.
std::uint64_t common_edges(const Graph& a, const Graph& b);

}  // namespace epgm
