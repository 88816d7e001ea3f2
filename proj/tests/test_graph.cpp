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

#include <sstream>

#include "epgm/error.hpp"
#include "epgm/graph.hpp"
#include "epgm/realization.hpp"
#include "epgm/rng.hpp"
#include "epgm/stats.hpp"

namespace epgm {
namespace {

Graph parse(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  return sample_eigm(make_er(n, p), {seed});
}

TEST_CASE("reading edge lists") {
  Graph g = parse("0 1\n1 2\n");
  CHECK(g.num_nodes() == 3);
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});

  g = parse("0 1\n1 0\n");
  CHECK(g.num_edges() == 1);
  CHECK(g.dropped_duplicates() == 1);

  g = parse("2 2\n");
  CHECK(g.num_edges() == 0);
  CHECK(g.dropped_self_loops() == 1);

  g = parse("# nodes 10\n# a comment\n3 4  # trailing\n\n");
  CHECK(g.num_nodes() == 10);
  CHECK(g.has_edge(4, 3));
}

TEST_CASE("parse errors carry the line number") {
  try {
    parse("0 1\n1 x\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse("0 1.5\n"), ParseError);
  CHECK_THROWS_AS(parse("0\n"), ParseError);
  CHECK_THROWS_AS(parse("# nodes 2\n0 5\n"), DataError);
}

TEST_CASE("edge list round trip") {
  const Graph g = random_graph(60, 0.1, 3);
  std::stringstream buf;
  write_edge_list(buf, g);
  CHECK(read_edge_list(buf) == g);

  const Graph isolated(5, {{0, 1}});
  std::stringstream buf2;
  write_edge_list(buf2, isolated);
  CHECK(read_edge_list(buf2).num_nodes() == 5);
}

TEST_CASE("adjacency is consistent with the edge set") {
  const Graph g = random_graph(80, 0.08, 4);
  std::size_t degree_sum = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    degree_sum += g.degree(v);
    for (NodeId w : g.neighbors(v)) CHECK(g.has_edge(v, w));
  }
  CHECK(degree_sum == 2 * g.num_edges());
}

TEST_CASE("stats of small graphs") {
  GraphStats s = compute_stats(Graph(3, {{0, 1}, {1, 2}, {0, 2}}));
  CHECK(s.triangle_count == 1);
  CHECK(s.gcc == 1.0);
  CHECK(s.alcc == 1.0);

  s = compute_stats(Graph(4, {{0, 1}, {0, 2}, {0, 3}}));
  CHECK(s.triangle_count == 0);
  CHECK(s.gcc == 0.0);
  CHECK(s.alcc == 0.0);
  CHECK(s.wedge_count == 3);

  s = compute_stats(Graph(3, {}));
  CHECK(s.gcc == 0.0);
}

TEST_CASE("triangle counts against brute force") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph g = random_graph(40, 0.2, seed);
    std::uint64_t brute = 0;
    for (NodeId a = 0; a < 40; ++a) {
      for (NodeId b = a + 1; b < 40; ++b) {
        for (NodeId c = b + 1; c < 40; ++c) {
          brute += g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c);
        }
      }
    }
    CHECK(count_triangles(g) == brute);
    const GraphStats s = compute_stats(g);
    CHECK(s.gcc * static_cast<double>(s.wedge_count) == doctest::Approx(3.0 * brute));
    CHECK(s.alcc >= 0.0);
    CHECK(s.alcc <= 1.0);
  }
}

TEST_CASE("ccdfs are non-increasing") {
  const Graph g = random_graph(200, 0.02, 9);
  const GraphStats s = compute_stats(g);
  for (std::size_t i = 1; i < s.degree_ccdf.size(); ++i) {
    CHECK(s.degree_ccdf[i].count <= s.degree_ccdf[i - 1].count);
  }
  for (std::size_t i = 1; i < s.distance_ccdf.size(); ++i) {
    CHECK(s.distance_ccdf[i].count <= s.distance_ccdf[i - 1].count);
  }
}

TEST_CASE("distances on a path") {
  // Path 0-1-2-3 plus an isolated pair 4-5: distances use the path only.
  const GraphStats s = compute_stats(Graph(6, {{0, 1}, {1, 2}, {2, 3}, {4, 5}}));
  CHECK(s.lcc_size == 4);
  REQUIRE(s.distance_ccdf.size() == 3);
  CHECK(s.distance_ccdf[0].count == 6.0);
  CHECK(s.distance_ccdf[1].count == 3.0);
  CHECK(s.distance_ccdf[2].count == 1.0);
}

TEST_CASE("overlap of graph lists") {
  const Graph a(4, {{0, 1}, {2, 3}});
  const Graph b(4, {{0, 2}, {1, 3}});
  std::vector<Graph> same{a, a};
  CHECK(empirical_overlap(same) == 1.0);
  std::vector<Graph> disjoint{a, b};
  CHECK(empirical_overlap(disjoint) == 0.0);
  std::vector<Graph> empty{Graph(3, {}), Graph(3, {})};
  CHECK_THROWS_AS(empirical_overlap(empty), NumericalError);

  const double p0 = 0.05;
  const auto batch = generate_batch(make_er(300, p0), BindingParams{}, 100, {21});
  CHECK(empirical_overlap(batch) == doctest::Approx(p0).epsilon(0.05));
}

}  // namespace
}  // namespace epgm
