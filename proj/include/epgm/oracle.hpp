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

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "epgm/expected_counts.hpp"
#include "epgm/motif.hpp"

namespace epgm {

struct OracleEstimate {
  std::array<double, 8> estimate{};
  std::array<double, 8> std_error{};  // sqrt(p(1-p)/trials)
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

// A three-node SB model with singleton blocks realizing the triple's p and g.
EdgeProbModel triple_model(const TripleSpec<double>& t);
BindingParams triple_binding(const TripleSpec<double>& t);

// Tallies the 8 labeled outcomes over `trials` runs of the real samplers on
// the three-node instance. Requires trials >= 10^4.
OracleEstimate mc_motif3(const TripleSpec<double>& t, std::uint64_t trials, std::uint64_t seed);

// Sum over all C(n,3) node triples with per-node g and per-pair p; no
// equivalence classes. Rejects n > n_cap.
ExpectedCounts naive_expected_counts(const EdgeProbModel& m, const BindingParams& b,
                                     std::size_t n_cap = 60);

struct MarginalTable {
  Eigen::MatrixXd frequency;  // symmetric, diagonal unused
  Eigen::MatrixXd expected;   // p(u,v)
  std::uint64_t samples = 0;

  // Binomial standard error of the frequency under p(u,v).
  double std_error(int u, int v) const;
  double max_abs_z() const;
};

// Per-pair empirical edge frequencies from full graph samples; n <= 8.
MarginalTable mc_marginals(const EdgeProbModel& m, const BindingParams& b,
                           std::uint64_t samples, std::uint64_t seed);

struct OracleCheckRow {
  int config = 0;
  MotifScheme scheme = MotifScheme::kEdgeIndependent;
  ResidualCoupling residual = ResidualCoupling::kShared;
  TripleSpec<double> spec;
  unsigned outcome = 0;
  double closed_form = 0;
  double estimate = 0;
  double std_error = 0;
  double z = 0;
  bool pass = false;
};

// z-score of an estimate against a closed form with the binomial error
// sqrt(p(1-p)/trials), floored at 1/trials.
double oracle_z(double closed_form, double estimate, std::uint64_t trials);

// Random triple configurations drawn from p, g in {0.1, ..., 0.9} and
// R in {1, 2, 5}.
std::vector<TripleSpec<double>> random_triple_configs(std::size_t count, MotifScheme scheme,
                                                      ResidualCoupling residual,
                                                      std::uint64_t seed);

// Closed form vs Monte Carlo for every outcome of every configuration,
// with a 4-standard-error band.
std::vector<OracleCheckRow> oracle_sweep(std::size_t configs_per_scheme, std::uint64_t trials,
                                         std::uint64_t seed);

}  // namespace epgm
