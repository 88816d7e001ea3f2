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

#include "epgm/error.hpp"
#include "epgm/realization.hpp"
#include "epgm/rng.hpp"
#include "epgm/stats.hpp"

namespace epgm {
namespace {

BindingParams binding(Scheme scheme, int rounds, Eigen::VectorXd g,
                      ResidualCoupling residual = ResidualCoupling::kShared) {
  BindingParams b;
  b.scheme = scheme;
  b.rounds = rounds;
  b.g = std::move(g);
  b.residual = residual;
  return b;
}

TEST_CASE("bind_group") {
  const std::vector<WeightedPair> group{{{0, 1}, 0.2}, {{1, 2}, 0.7}};
  CHECK(bind_group(group, 0.5) == std::vector<Edge>{{1, 2}});
  CHECK(bind_group(group, 0.0).size() == 2);
  const std::vector<WeightedPair> zero{{{0, 1}, 0.0}, {{1, 2}, 0.0}};
  CHECK(bind_group(zero, 0.3).empty());
}

TEST_CASE("EIGM extremes and edge counts") {
  CHECK(sample_eigm(make_er(30, 1.0), {1}).num_edges() == 435);
  CHECK(sample_eigm(make_er(30, 0.0), {1}).num_edges() == 0);
  const auto batch = generate_batch(make_er(1000, 0.01), BindingParams{}, 100, {3});
  double total = 0;
  for (const auto& g : batch) total += static_cast<double>(g.num_edges());
  const double pairs = 1000.0 * 999 / 2;
  const double mean = total / 100;
  const double sigma = std::sqrt(pairs * 0.01 * 0.99 / 100);
  CHECK(std::abs(mean - pairs * 0.01) <= 4 * sigma);
}

TEST_CASE("skip sampling matches pairwise frequencies on block models") {
  Eigen::MatrixXd pb(3, 3);
  pb << 0.9, 0.05, 0.3, 0.05, 0.5, 0.7, 0.3, 0.7, 0.01;
  const EdgeProbModel m = make_sb({0, 1, 2, 0, 1, 2, 0, 1}, pb);
  const int samples = 40000;
  Eigen::MatrixXd count = Eigen::MatrixXd::Zero(8, 8);
  for (int i = 0; i < samples; ++i) {
    for (const Edge& e : realize_edge_independent(m, derive_seed(9, StreamTag::kTest, i))) {
      count(e.u, e.v) += 1;
    }
  }
  for (NodeId u = 0; u < 8; ++u) {
    for (NodeId v = u + 1; v < 8; ++v) {
      const double p = edge_prob(m, u, v);
      const double se = std::sqrt(p * (1 - p) / samples);
      CHECK(std::abs(count(u, v) / samples - p) <= 4 * se + 1e-12);
    }
  }
}

TEST_CASE("local binding with g = 0 equals EIGM in law") {
  const EdgeProbModel m = make_cl({5, 3, 3, 2, 1, 1, 4, 2});
  const auto b = binding(Scheme::kLocalBinding, 10, Eigen::VectorXd::Zero(num_classes(m)));
  double tri_local = 0, tri_eigm = 0;
  const int samples = 20000;
  for (int i = 0; i < samples; ++i) {
    tri_local += count_triangles(Graph(8, realize(m, b, derive_seed(1, StreamTag::kTest, i))));
    tri_eigm += count_triangles(Graph(8, realize_edge_independent(m, derive_seed(2, StreamTag::kTest, i))));
  }
  CHECK(tri_local / samples == doctest::Approx(tri_eigm / samples).epsilon(0.05));
}

TEST_CASE("local binding with g = 1 is maximal binding") {
  const EdgeProbModel m = make_cl({5, 3, 3, 2, 1, 1, 4, 2, 6, 3});
  const auto b = binding(Scheme::kLocalBinding, 1, Eigen::VectorXd::Ones(num_classes(m)));
  for (int i = 0; i < 50; ++i) {
    const Graph g = sample_local_binding(m, b, {static_cast<std::uint64_t>(i)});
    // Nested: the edge set is a threshold set of p.
    double min_in = 2, max_out = -1;
    for (NodeId u = 0; u < 10; ++u) {
      for (NodeId v = u + 1; v < 10; ++v) {
        const double p = edge_prob(m, u, v);
        if (g.has_edge(u, v)) {
          min_in = std::min(min_in, p);
        } else {
          max_out = std::max(max_out, p);
        }
      }
    }
    CHECK(max_out < min_in);
  }
}

TEST_CASE("local binding stops once every pair is grouped") {
  // With g = 1 round 0 groups everything; the result is the same for any R.
  const EdgeProbModel m = make_er(12, 0.4);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto one = realize(m, binding(Scheme::kLocalBinding, 1, Eigen::VectorXd::Ones(1)), seed);
    const auto many = realize(m, binding(Scheme::kLocalBinding, 500, Eigen::VectorXd::Ones(1)), seed);
    CHECK(one == many);
  }
}

TEST_CASE("parallel binding probabilities") {
  CHECK(round_prob(0.96, 0.64, 2) == 1.0);
  CHECK(residual_prob(0.96, 0.64, 2) == doctest::Approx(1 - 0.04 / (0.36 * 0.36)));
  CHECK(round_prob(0.75, 1.0, 2) == doctest::Approx(0.5));
  CHECK(residual_prob(0.75, 1.0, 2) == 0.0);
  CHECK(round_prob(0.3, 0.0, 4) == 0.0);
  CHECK(residual_prob(0.3, 0.0, 4) == 0.3);
}

TEST_CASE("validation") {
  const EdgeProbModel m = make_er(10, 0.2);
  CHECK_THROWS_AS(validate(binding(Scheme::kParallelBinding, 0, Eigen::VectorXd::Ones(1)), m), DataError);
  CHECK_THROWS_AS(validate(binding(Scheme::kLocalBinding, 5, Eigen::VectorXd::Ones(2)), m), DataError);
  CHECK_THROWS_AS(validate(binding(Scheme::kLocalBinding, 5, Eigen::VectorXd::Constant(1, 1.5)), m),
                  DataError);
  CHECK_NOTHROW(validate(binding(Scheme::kLocalBinding, 0, Eigen::VectorXd::Ones(1)), m));
}

TEST_CASE("expected degrees are preserved") {
  const EdgeProbModel m = make_cl({8, 1, 3, 3, 2, 5, 6, 1, 1, 2, 4, 4});
  for (auto scheme : {Scheme::kLocalBinding, Scheme::kParallelBinding}) {
    const auto b = binding(scheme, 4, Eigen::VectorXd::Constant(num_classes(m), 0.6));
    const int samples = 20000;
    std::vector<double> degree(12, 0.0);
    for (int i = 0; i < samples; ++i) {
      for (const Edge& e : realize(m, b, derive_seed(4, StreamTag::kTest, i))) {
        degree[e.u] += 1;
        degree[e.v] += 1;
      }
    }
    for (NodeId v = 0; v < 12; ++v) {
      double mean = 0, var = 0;
      for (NodeId u = 0; u < 12; ++u) {
        if (u == v) continue;
        const double p = edge_prob(m, u, v);
        mean += p;
        var += p * (1 - p);
      }
      // Binding correlates incident pairs, so the variance bound is loose by
      // at most the number of incident pairs.
      const double se = std::sqrt(11 * var / samples);
      CHECK(std::abs(degree[v] / samples - mean) <= 4 * se);
    }
  }
}

TEST_CASE("batches are deterministic and thread-independent") {
  const EdgeProbModel m = make_er(200, 0.05);
  const auto b = binding(Scheme::kParallelBinding, 8, Eigen::VectorXd::Constant(1, 0.1),
                         ResidualCoupling::kIndependent);
  const auto a1 = generate_batch(m, b, 4, {77}, 1);
  const auto a2 = generate_batch(m, b, 4, {77}, 4);
  CHECK(a1[0].num_edges() > 0);
  CHECK(a1 == a2);
  CHECK(sample_parallel_binding(m, b, {5}, 1) == sample_parallel_binding(m, b, {5}, 8));
  CHECK_FALSE(generate_batch(m, b, 1, {78})[0] == a1[0]);
}

TEST_CASE("KR sampling frequencies") {
  Eigen::Matrix2d theta;
  theta << 0.9, 0.6, 0.6, 0.2;
  const EdgeProbModel m = load_kr(theta, 3);
  const auto b = binding(Scheme::kParallelBinding, 3, Eigen::VectorXd::LinSpaced(4, 0.2, 0.8),
                         ResidualCoupling::kIndependent);
  const int samples = 30000;
  Eigen::MatrixXd count = Eigen::MatrixXd::Zero(8, 8);
  for (int i = 0; i < samples; ++i) {
    for (const Edge& e : realize(m, b, derive_seed(8, StreamTag::kTest, i))) count(e.u, e.v) += 1;
  }
  for (NodeId u = 0; u < 8; ++u) {
    for (NodeId v = u + 1; v < 8; ++v) {
      const double p = edge_prob(m, u, v);
      CHECK(std::abs(count(u, v) / samples - p) <= 4 * std::sqrt(p * (1 - p) / samples) + 1e-12);
    }
  }
}

}  // namespace
}  // namespace epgm
