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
#include "epgm/expected_counts.hpp"
#include "epgm/oracle.hpp"

namespace epgm {
namespace {

TripleSpec<double> make_triple(std::array<double, 3> p, std::array<double, 3> g, int rounds,
                        MotifScheme scheme) {
  TripleSpec<double> t;
  t.p = p;
  t.g = g;
  t.rounds = rounds;
  t.scheme = scheme;
  return t;
}

TEST_CASE("mc_motif3 reproduces the small worked cases") {
  auto est = mc_motif3(make_triple({0.2, 0.5, 0.7}, {}, 1, MotifScheme::kMaximal), 100000, 1);
  CHECK(std::abs(est.estimate[kTriangle] - 0.2) <= 4 * 0.0013);
  est = mc_motif3(make_triple({0.5, 0.5, 0.5}, {}, 1, MotifScheme::kEdgeIndependent), 100000, 2);
  CHECK(std::abs(oracle_z(0.125, est.estimate[kTriangle], est.trials)) <= 4);
  est = mc_motif3(make_triple({0.5, 0.5, 0.5}, {0.5, 0.5, 0.5}, 1, MotifScheme::kLocalBinding), 100000, 3);
  CHECK(std::abs(oracle_z(0.171875, est.estimate[kTriangle], est.trials)) <= 4);
}

TEST_CASE("mc_motif3 rejects short runs") {
  CHECK_THROWS_AS(mc_motif3(make_triple({0.5, 0.5, 0.5}, {}, 1, MotifScheme::kMaximal), 100, 1), DataError);
}

TEST_CASE("oracle sweep agrees with every closed form") {
  const auto rows = oracle_sweep(6, 20000, 11);
  CHECK(rows.size() == 5 * 6 * 8);
  int failures = 0;
  for (const auto& r : rows) {
    if (!r.pass) {
      ++failures;
      MESSAGE("config " << r.config << " outcome " << r.outcome << " cf " << r.closed_form
                        << " mc " << r.estimate << " z " << r.z);
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("naive expected counts on the tiny ER instance") {
  BindingParams b;
  const EdgeProbModel m = make_er(4, 0.5);
  CHECK(naive_expected_counts(m, b).triangles == doctest::Approx(0.5));
  b.scheme = Scheme::kLocalBinding;
  b.rounds = 3;
  b.g = Eigen::VectorXd::Ones(1);
  CHECK(naive_expected_counts(m, b).triangles == doctest::Approx(2.0));
  CHECK_THROWS_AS(naive_expected_counts(make_er(61, 0.5), BindingParams{}), DataError);
}

TEST_CASE("marginals under each scheme") {
  Eigen::MatrixXd pb(2, 2);
  pb << 0.6, 0.2, 0.2, 0.45;
  const EdgeProbModel m = make_sb({0, 0, 1, 1, 1, 0}, pb);
  BindingParams b;
  CHECK(mc_marginals(m, b, 20000, 5).max_abs_z() <= 4);
  b.g = Eigen::Vector2d(0.7, 0.3);
  b.scheme = Scheme::kLocalBinding;
  b.rounds = 3;
  CHECK(mc_marginals(m, b, 20000, 6).max_abs_z() <= 4);
  b.scheme = Scheme::kParallelBinding;
  CHECK(mc_marginals(m, b, 20000, 7).max_abs_z() <= 4);
  b.residual = ResidualCoupling::kIndependent;
  CHECK(mc_marginals(m, b, 20000, 8).max_abs_z() <= 4);
}

TEST_CASE("oracle_z floors the error for degenerate probabilities") {
  CHECK(oracle_z(0.0, 0.0, 10000) == 0.0);
  CHECK(oracle_z(0.0, 2e-4, 10000) == doctest::Approx(2.0));
}

}  // namespace
}  // namespace epgm
