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

#include "epgm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "epgm/error.hpp"
#include "epgm/rng.hpp"

namespace epgm {

EdgeProbModel triple_model(const TripleSpec<double>& t) {
  Eigen::MatrixXd pb = Eigen::MatrixXd::Zero(3, 3);
  for (int e = 0; e < 3; ++e) {
    const auto [i, j] = kPairNodes[e];
    pb(i, j) = pb(j, i) = t.p[e];
  }
  return make_sb({0, 1, 2}, pb);
}

BindingParams triple_binding(const TripleSpec<double>& t) {
  BindingParams b;
  b.g = Eigen::Vector3d(t.g[0], t.g[1], t.g[2]);
  b.rounds = t.rounds;
  b.residual = t.residual;
  switch (t.scheme) {
    case MotifScheme::kEdgeIndependent:
      b.scheme = Scheme::kEdgeIndependent;
      break;
    case MotifScheme::kMaximal:
      // One round sampling every node puts all pairs in a single group.
      b.scheme = Scheme::kLocalBinding;
      b.g = Eigen::Vector3d::Ones();
      b.rounds = 1;
      break;
    case MotifScheme::kLocalBinding:
      b.scheme = Scheme::kLocalBinding;
      break;
    case MotifScheme::kParallelBinding:
      b.scheme = Scheme::kParallelBinding;
      break;
  }
  return b;
}

OracleEstimate mc_motif3(const TripleSpec<double>& t, std::uint64_t trials, std::uint64_t seed) {
  if (trials < 10000) throw DataError("mc_motif3 needs at least 10^4 trials");
  const EdgeProbModel m = triple_model(t);
  const BindingParams b = triple_binding(t);
  std::array<std::uint64_t, 8> tally{};
  for (std::uint64_t i = 0; i < trials; ++i) {
    const auto edges = realize(m, b, derive_seed(seed, StreamTag::kOracle, i));
    unsigned mask = 0;
    for (const Edge& e : edges) mask |= 1u << (e.u + e.v - 1);  // (0,1)->0, (0,2)->1, (1,2)->2
    ++tally[mask];
  }
  OracleEstimate out;
  out.trials = trials;
  out.seed = seed;
  for (int k = 0; k < 8; ++k) {
    const double p = static_cast<double>(tally[k]) / static_cast<double>(trials);
    out.estimate[k] = p;
    out.std_error[k] = std::sqrt(p * (1 - p) / static_cast<double>(trials));
  }
  return out;
}

ExpectedCounts naive_expected_counts(const EdgeProbModel& m, const BindingParams& b,
                                     std::size_t n_cap) {
  validate(b, m);
  const std::size_t n = num_nodes(m);
  if (n > n_cap) {
    throw DataError("naive summation is capped at " + std::to_string(n_cap) + " nodes");
  }
  const Eigen::VectorXd g = node_sampling_probs(m, b);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) p(u, v) = p(v, u) = edge_prob(m, u, v);
  }
  TripleSpec<double> t;
  t.scheme = motif_scheme(b.scheme);
  t.rounds = b.rounds;
  t.residual = b.residual;
  const bool binding = b.scheme != Scheme::kEdgeIndependent;
  ExpectedCounts out;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      for (NodeId w = v + 1; w < n; ++w) {
        t.p = {p(u, v), p(u, w), p(v, w)};
        t.g = binding ? std::array<double, 3>{g[u], g[v], g[w]} : std::array<double, 3>{};
        const TripleMoments<double> mom = triple_moments(t);
        out.triangles += mom.triangle;
        out.wedges += mom.wedges;
      }
    }
  }
  return out;
}

double MarginalTable::std_error(int u, int v) const {
  const double p = expected(u, v);
  return std::sqrt(p * (1 - p) / static_cast<double>(samples));
}

double MarginalTable::max_abs_z() const {
  double worst = 0;
  for (int u = 0; u < expected.rows(); ++u) {
    for (int v = u + 1; v < expected.cols(); ++v) {
      const double diff = std::abs(frequency(u, v) - expected(u, v));
      const double se = std_error(u, v);
      if (se == 0) {
        if (diff > 0) return std::numeric_limits<double>::infinity();
        continue;
      }
      worst = std::max(worst, diff / se);
    }
  }
  return worst;
}

MarginalTable mc_marginals(const EdgeProbModel& m, const BindingParams& b, std::uint64_t samples,
                           std::uint64_t seed) {
  validate(b, m);
  const std::size_t n = num_nodes(m);
  if (n > 8) throw DataError("mc_marginals is limited to 8 nodes");
  MarginalTable out;
  out.samples = samples;
  out.expected = Eigen::MatrixXd::Zero(n, n);
  out.frequency = Eigen::MatrixXd::Zero(n, n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) out.expected(u, v) = out.expected(v, u) = edge_prob(m, u, v);
  }
  Eigen::MatrixXd count = Eigen::MatrixXd::Zero(n, n);
  for (std::uint64_t i = 0; i < samples; ++i) {
    for (const Edge& e : realize(m, b, derive_seed(seed, StreamTag::kOracle, i))) {
      count(e.u, e.v) += 1;
    }
  }
  count /= static_cast<double>(samples);
  out.frequency = count + count.transpose();
  return out;
}

double oracle_z(double closed_form, double estimate, std::uint64_t trials) {
  const double t = static_cast<double>(trials);
  const double p = std::clamp(closed_form, 0.0, 1.0);
  const double se = std::max(std::sqrt(p * (1 - p) / t), 1 / t);
  return (estimate - closed_form) / se;
}

std::vector<TripleSpec<double>> random_triple_configs(std::size_t count, MotifScheme scheme,
                                                      ResidualCoupling residual,
                                                      std::uint64_t seed) {
  Rng rng(seed, StreamTag::kTest,
          static_cast<std::uint64_t>(scheme) * 2 + static_cast<std::uint64_t>(residual));
  constexpr int kRounds[] = {1, 2, 5};
  auto grid = [&] { return 0.1 * static_cast<double>(1 + rng() % 9); };
  std::vector<TripleSpec<double>> out(count);
  for (auto& t : out) {
    t.scheme = scheme;
    t.residual = residual;
    for (auto& p : t.p) p = grid();
    for (auto& g : t.g) g = grid();
    t.rounds = kRounds[rng() % 3];
  }
  return out;
}

std::vector<OracleCheckRow> oracle_sweep(std::size_t configs_per_scheme, std::uint64_t trials,
                                         std::uint64_t seed) {
  struct Variant {
    MotifScheme scheme;
    ResidualCoupling residual;
  };
  constexpr Variant kVariants[] = {
      {MotifScheme::kEdgeIndependent, ResidualCoupling::kShared},
      {MotifScheme::kMaximal, ResidualCoupling::kShared},
      {MotifScheme::kLocalBinding, ResidualCoupling::kShared},
      {MotifScheme::kParallelBinding, ResidualCoupling::kShared},
      {MotifScheme::kParallelBinding, ResidualCoupling::kIndependent},
  };
  std::vector<OracleCheckRow> rows;
  int config = 0;
  for (const Variant& v : kVariants) {
    for (const auto& t : random_triple_configs(configs_per_scheme, v.scheme, v.residual, seed)) {
      const MotifDistribution3<double> cf = motif3(t);
      const OracleEstimate est =
          mc_motif3(t, trials, derive_seed(seed, StreamTag::kOracle, static_cast<std::uint64_t>(config)));
      for (unsigned k = 0; k < 8; ++k) {
        OracleCheckRow row;
        row.config = config;
        row.scheme = v.scheme;
        row.residual = v.residual;
        row.spec = t;
        row.outcome = k;
        row.closed_form = cf[k];
        row.estimate = est.estimate[k];
        row.std_error = est.std_error[k];
        row.z = oracle_z(cf[k], est.estimate[k], trials);
        row.pass = std::abs(row.z) <= 4;
        rows.push_back(row);
      }
      ++config;
    }
  }
  return rows;
}

}  // namespace epgm
