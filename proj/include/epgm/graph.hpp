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
#include <filesystem>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace epgm {

using NodeId = std::uint32_t;

// Unordered node pair stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  Edge() = default;
  Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Dense index of the pair (u, v), u < v, into [0, n(n-1)/2).
inline std::uint64_t pair_index(NodeId u, NodeId v, std::uint64_t n) {
  if (u > v) std::swap(u, v);
  return static_cast<std::uint64_t>(u) * (2 * n - u - 1) / 2 + (v - u - 1);
}

inline std::uint64_t num_pairs(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

/// Undirected simple graph on nodes 0..n-1 with sorted CSR adjacency.
///
/// Construction drops self-loops and duplicate pairs; the edge list is kept
/// sorted so two graphs with the same edge set compare equal and serialize
/// byte-identically.
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t num_nodes() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const;

  // Counts of what the constructor discarded.
  std::size_t dropped_self_loops() const { return dropped_loops_; }
  std::size_t dropped_duplicates() const { return dropped_dups_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adj_;
  std::size_t dropped_loops_ = 0;
  std::size_t dropped_dups_ = 0;
};

// Edge-list text format: one "u v" pair per line, '#' starts a comment.
// An optional header line "# nodes N" fixes the node count; otherwise
// n = 1 + max node id.
Graph read_edge_list(std::istream& in);
Graph read_edge_list(const std::filesystem::path& path);
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list(const std::filesystem::path& path, const Graph& g);

}  // namespace epgm
