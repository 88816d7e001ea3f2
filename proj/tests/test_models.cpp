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

#include <cmath>
#include <filesystem>
#include <fstream>

#include "epgm/error.hpp"
#include "epgm/models.hpp"
#include "epgm/rng.hpp"

namespace epgm {
namespace {

TEST_CASE("fit_er") {
  const ErModel er = fit_er(Graph(4, {{0, 1}, {1, 2}, {2, 3}}));
  CHECK(er.p0 == 0.5);
  CHECK(fit_er(Graph(2, {})).p0 == 0.0);
  CHECK(fit_er(Graph(2, {{0, 1}})).p0 == 1.0);
  CHECK_THROWS_AS(fit_er(Graph(1, {})), DataError);
}

TEST_CASE("fit_cl") {
  const EdgeProbModel cl = make_cl({3, 2, 1, 2});
  CHECK(edge_prob(cl, 0, 1) == doctest::Approx(0.75));
  CHECK(edge_prob(make_cl({4, 4}), 0, 1) == 1.0);

  const ClModel path = fit_cl(Graph(3, {{0, 1}, {1, 2}}));
  CHECK(path.class_degree == std::vector<double>{1, 2});
  CHECK(class_pair_prob(path, 0, 1) == doctest::Approx(1.0 / 2.0));
  CHECK(class_pair_prob(make_cl({1, 2, 1, 2}), 0, 1) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(fit_cl(Graph(3, {})), DataError);
}

TEST_CASE("fit_cl edge sum without clamping") {
  Rng rng(5);
  std::vector<Edge> edges;
  for (int i = 0; i < 400; ++i) edges.emplace_back(rng() % 200, rng() % 200);
  const Graph g(200, edges);
  const ClModel cl = fit_cl(g);
  double sum = 0, max_prod = 0, sq = 0;
  for (double d : cl.degrees) sq += d * d;
  for (NodeId u = 0; u < 200; ++u) {
    for (NodeId v = u + 1; v < 200; ++v) {
      sum += edge_prob(cl, u, v);
      max_prod = std::max(max_prod, cl.degrees[u] * cl.degrees[v]);
    }
  }
  REQUIRE(max_prod < cl.degree_sum);
  // sum_{u<v} d_u d_v / S = |E| - sum d^2 / (2S): the pairs u = v are excluded.
  const double s = cl.degree_sum;
  CHECK(s == 2.0 * static_cast<double>(g.num_edges()));
  CHECK(sum == doctest::Approx(static_cast<double>(g.num_edges()) - sq / (2 * s)));
}

TEST_CASE("fit_sb") {
  const Graph g(4, {{0, 1}, {0, 2}});
  const std::vector<int> blocks{0, 0, 1, 1};
  const SbModel sb = fit_sb(g, blocks);
  CHECK(sb.block_prob(0, 0) == 1.0);
  CHECK(sb.block_prob(0, 1) == 0.25);
  CHECK(sb.block_prob(1, 1) == 0.0);

  const std::vector<int> one{0, 0, 0, 0};
  CHECK(fit_sb(g, one).block_prob(0, 0) == doctest::Approx(fit_er(g).p0));

  const std::vector<int> singles{0, 1, 2, 3};
  const SbModel s = fit_sb(g, singles);
  for (int a = 0; a < 4; ++a) {
    CHECK(s.block_prob(a, a) == 0.0);
    for (int b = a + 1; b < 4; ++b) CHECK(s.block_prob(a, b) == (g.has_edge(a, b) ? 1.0 : 0.0));
  }
  const std::vector<int> short_partition{0, 1};
  CHECK_THROWS_AS(fit_sb(g, short_partition), DataError);
}

TEST_CASE("load_kr") {
  Eigen::Matrix2d theta;
  theta << 0.9, 0.5, 0.5, 0.1;
  const KrModel kr = load_kr(theta, 2);
  CHECK(num_nodes(kr) == 4);
  CHECK(edge_prob(kr, 0b00, 0b11) == doctest::Approx(0.25));
  CHECK(edge_prob(load_kr(theta, 1), 0, 1) == 0.5);
  CHECK(edge_prob(load_kr(Eigen::Matrix2d::Ones(), 3), 2, 5) == 1.0);
  Eigen::Matrix2d bad;
  bad << 0.9, 0.4, 0.5, 0.1;
  CHECK_THROWS_AS(load_kr(bad, 2), DataError);
  CHECK_THROWS_AS(class_pair_prob(kr, 0, 1), UnsupportedQuery);
}

TEST_CASE("KR probability depends only on joint bit patterns") {
  Eigen::Matrix2d theta;
  theta << 0.8, 0.45, 0.45, 0.3;
  const KrModel kr = load_kr(theta, 5);
  // Rotating the bits of both nodes permutes positions.
  auto rotate = [](NodeId x) { return ((x << 1) | (x >> 4)) & 31u; };
  for (NodeId u = 0; u < 32; ++u) {
    for (NodeId v = u + 1; v < 32; ++v) {
      CHECK(edge_prob(kr, u, v) == doctest::Approx(edge_prob(kr, rotate(u), rotate(v))));
    }
  }
}

TEST_CASE("class structure agrees with pairwise probabilities") {
  Eigen::MatrixXd pb(3, 3);
  pb << 0.5, 0.1, 0.2, 0.1, 0.3, 0.05, 0.2, 0.05, 0.0;
  std::vector<int> blocks;
  for (int v = 0; v < 30; ++v) blocks.push_back(v % 3);
  const std::vector<EdgeProbModel> models{make_er(30, 0.3), make_cl({1, 5, 2, 2, 7, 1, 3, 3, 9, 5}),
                                          make_sb(blocks, pb)};
  for (const auto& m : models) {
    const ClassStructure cs = class_structure(m);
    const auto n = static_cast<NodeId>(num_nodes(m));
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        CHECK(edge_prob(m, u, v) == class_pair_prob(m, cs.class_of[u], cs.class_of[v]));
      }
    }
  }
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(make_er(4, 1.5), DataError);
  CHECK_THROWS_AS(make_cl({1, -1}), DataError);
  Eigen::MatrixXd asym(2, 2);
  asym << 0.1, 0.2, 0.3, 0.4;
  CHECK_THROWS_AS(make_sb({0, 1}, asym), DataError);
  CHECK_THROWS_AS(make_sb({0, 0}, Eigen::MatrixXd::Constant(2, 2, 0.5)), DataError);
}

TEST_CASE("partition files") {
  const auto path = std::filesystem::temp_directory_path() / "epgm_partition_test.txt";
  {
    std::ofstream out(path);
    out << "# node block\n0 7\n1 3\n2 7\n3 3\n";
  }
  CHECK(read_partition(path, 4) == std::vector<int>{1, 0, 1, 0});
  CHECK_THROWS_AS(read_partition(path, 5), DataError);
  std::filesystem::remove(path);
}

TEST_CASE("degree buckets") {
  const Graph star(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  const auto buckets = degree_bucket_partition(star);
  CHECK(buckets == std::vector<int>{1, 0, 0, 0, 0});
}

}  // namespace
}  // namespace epgm
