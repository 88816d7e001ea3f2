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

#include "epgm/stats.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>

#include "epgm/error.hpp"
#include "epgm/rng.hpp"

namespace epgm {

namespace {

// Orientation by (degree, id): each triangle is found once from its
// lowest-ranked node.
std::vector<std::vector<NodeId>> forward_adjacency(const Graph& g) {
  const std::size_t n = g.num_nodes();
  auto ranked_below = [&](NodeId a, NodeId b) {
    return g.degree(a) < g.degree(b) || (g.degree(a) == g.degree(b) && a < b);
  };
  std::vector<std::vector<NodeId>> fwd(n);
  for (const Edge& e : g.edges()) {
    if (ranked_below(e.u, e.v)) {
      fwd[e.u].push_back(e.v);
    } else {
      fwd[e.v].push_back(e.u);
    }
  }
  for (auto& list : fwd) std::sort(list.begin(), list.end());
  return fwd;
}

template <class Visit>
void for_each_triangle(const Graph& g, Visit&& visit) {
  const auto fwd = forward_adjacency(g);
  for (NodeId u = 0; u < fwd.size(); ++u) {
    const auto& nu = fwd[u];
    for (NodeId v : nu) {
      const auto& nv = fwd[v];
      auto a = nu.begin();
      auto b = nv.begin();
      while (a != nu.end() && b != nv.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          visit(u, v, *a);
          ++a;
          ++b;
        }
      }
    }
  }
}

std::vector<CcdfPoint> degree_ccdf(const Graph& g) {
  std::size_t max_deg = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) max_deg = std::max(max_deg, g.degree(v));
  std::vector<double> hist(max_deg + 2, 0);
  for (NodeId v = 0; v < g.num_nodes(); ++v) hist[g.degree(v)] += 1;
  std::vector<CcdfPoint> out;
  double tail = 0;
  for (std::size_t k = max_deg; k >= 1; --k) {
    tail += hist[k];
    out.push_back({k, tail});
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<NodeId> largest_component(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<int> comp(n, -1);
  std::vector<NodeId> best, current, stack;
  int id = 0;
  for (NodeId s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    current.clear();
    stack.assign(1, s);
    comp[s] = id;
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      current.push_back(v);
      for (NodeId w : g.neighbors(v)) {
        if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
    if (current.size() > best.size()) best = current;
    ++id;
  }
  std::sort(best.begin(), best.end());
  return best;
}

std::vector<CcdfPoint> distance_ccdf(const Graph& g, const std::vector<NodeId>& lcc,
                                     const StatsOptions& opts) {
  if (lcc.size() < 2) return {};
  std::vector<NodeId> sources = lcc;
  double scale = 1.0;
  if (opts.distance_sources && *opts.distance_sources < lcc.size()) {
    Rng rng(opts.distance_seed, StreamTag::kDistance, 0);
    std::shuffle(sources.begin(), sources.end(), rng);
    sources.resize(*opts.distance_sources);
    std::sort(sources.begin(), sources.end());
    scale = static_cast<double>(lcc.size()) / static_cast<double>(sources.size());
  }
  std::vector<double> hist;  // ordered-pair counts by distance
  std::vector<int> dist(g.num_nodes(), -1);
  for (NodeId s : sources) {
    std::fill(dist.begin(), dist.end(), -1);
    std::queue<NodeId> q;
    q.push(s);
    dist[s] = 0;
    while (!q.empty()) {
      NodeId v = q.front();
      q.pop();
      for (NodeId w : g.neighbors(v)) {
        if (dist[w] >= 0) continue;
        dist[w] = dist[v] + 1;
        if (hist.size() <= static_cast<std::size_t>(dist[w])) hist.resize(dist[w] + 1, 0);
        hist[dist[w]] += 1;
        q.push(w);
      }
    }
  }
  std::vector<CcdfPoint> out;
  double tail = 0;
  for (std::size_t d = hist.size(); d-- > 1;) {
    tail += hist[d];
    out.push_back({d, tail * scale / 2.0});  // unordered pairs
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::uint64_t> triangles_per_node(const Graph& g) {
  std::vector<std::uint64_t> t(g.num_nodes(), 0);
  for_each_triangle(g, [&](NodeId a, NodeId b, NodeId c) {
    ++t[a];
    ++t[b];
    ++t[c];
  });
  return t;
}

std::uint64_t count_triangles(const Graph& g) {
  std::uint64_t count = 0;
  for_each_triangle(g, [&](NodeId, NodeId, NodeId) { ++count; });
  return count;
}

GraphStats compute_stats(const Graph& g, const StatsOptions& opts) {
  GraphStats s;
  s.num_nodes = g.num_nodes();
  s.num_edges = g.num_edges();
  const auto per_node = triangles_per_node(g);
  s.triangle_count = std::accumulate(per_node.begin(), per_node.end(), std::uint64_t{0}) / 3;
  double local_sum = 0;
  std::size_t local_count = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const std::uint64_t d = g.degree(v);
    const std::uint64_t wedges = d * (d - (d > 0 ? 1 : 0)) / 2;
    s.wedge_count += wedges;
    if (d >= 2) {
      local_sum += static_cast<double>(per_node[v]) / static_cast<double>(wedges);
      ++local_count;
    }
  }
  s.gcc = s.wedge_count == 0 ? 0.0
                             : 3.0 * static_cast<double>(s.triangle_count) /
                                   static_cast<double>(s.wedge_count);
  s.alcc = local_count == 0 ? 0.0 : local_sum / static_cast<double>(local_count);
  s.degree_ccdf = degree_ccdf(g);
  const auto lcc = largest_component(g);
  s.lcc_size = lcc.size();
  if (opts.distances) s.distance_ccdf = distance_ccdf(g, lcc, opts);
  return s;
}

std::uint64_t common_edges(const Graph& a, const Graph& b) {
  std::uint64_t shared = 0;
  auto x = a.edges().begin();
  auto y = b.edges().begin();
  while (x != a.edges().end() && y != b.edges().end()) {
    if (*x < *y) {
      ++x;
    } else if (*y < *x) {
      ++y;
    } else {
      ++shared;
      ++x;
      ++y;
    }
  }
  return shared;
}

double empirical_overlap(std::span<const Graph> graphs) {
  if (graphs.size() < 2) throw DataError("overlap needs at least two graphs");
  double edge_sum = 0;
  for (const Graph& g : graphs) {
    if (g.num_nodes() != graphs[0].num_nodes()) throw DataError("graphs differ in node count");
    edge_sum += static_cast<double>(g.num_edges());
  }
  const double mean_edges = edge_sum / static_cast<double>(graphs.size());
  if (mean_edges == 0) throw NumericalError("overlap undefined: mean edge count is zero");
  double shared = 0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    for (std::size_t j = i + 1; j < graphs.size(); ++j) {
      shared += static_cast<double>(common_edges(graphs[i], graphs[j]));
      ++pairs;
    }
  }
  return shared / static_cast<double>(pairs) / mean_edges;
}

}  // namespace epgm
