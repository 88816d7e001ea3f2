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

#include <cstddef>
#include <filesystem>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "epgm/graph.hpp"

namespace epgm {

// Erdős–Rényi: uniform probability on n0 nodes.
struct ErModel {
  std::size_t n0 = 0;
  double p0 = 0;
};

// Chung–Lu: p(u,v) = min(d_u d_v / sum(d), 1). Nodes sharing an exact
// degree value form one class; classes are ordered by ascending degree.
struct ClModel {
  std::vector<double> degrees;
  double degree_sum = 0;
  std::vector<double> class_degree;
  std::vector<int> class_of;
};

// Stochastic block model over a fixed node partition.
struct SbModel {
  std::vector<int> block_of;
  Eigen::MatrixXd block_prob;  // symmetric c x c
};

// Stochastic Kronecker: k-th Kronecker power of a symmetric 2x2 seed on
// 2^k nodes; p(u,v) = prod_b theta(u_b, v_b) over the bits of u and v.
struct KrModel {
  Eigen::Matrix2d theta = Eigen::Matrix2d::Zero();
  int k = 0;
};

using EdgeProbModel = std::variant<ErModel, ClModel, SbModel, KrModel>;

enum class ModelKind { kEr, kCl, kSb, kKr };

ModelKind model_kind(const EdgeProbModel& m);
std::string_view model_name(ModelKind kind);
std::size_t num_nodes(const EdgeProbModel& m);

// Marginal edge probability of the pair (u, v), u != v.
double edge_prob(const EdgeProbModel& m, NodeId u, NodeId v);

/// Node-equivalence classes of a model. Nodes in one class share their
/// node-sampling probability; for ER/CL/SB they are also interchangeable in
/// p. KR classes group nodes by popcount, a weaker equivalence.
struct ClassStructure {
  std::vector<int> class_of;
  std::vector<std::vector<NodeId>> members;

  std::size_t num_classes() const { return members.size(); }
  std::size_t class_size(int c) const { return members[c].size(); }
};

ClassStructure class_structure(const EdgeProbModel& m);
std::size_t num_classes(const EdgeProbModel& m);

// p(u, v) for any u in class a, v in class b, u != v. Throws
// UnsupportedQuery for KR, whose popcount classes do not determine p.
double class_pair_prob(const EdgeProbModel& m, int a, int b);

// KR probability of a pair from its joint bit-pattern counts: n_xy bit
// positions where u has bit x and v has bit y.
double kr_pattern_prob(const KrModel& m, int n00, int n01, int n10, int n11);

// Fitting from an observed graph.
ErModel fit_er(const Graph& g);
ClModel fit_cl(const Graph& g);
SbModel fit_sb(const Graph& g, std::span<const int> block_of);
KrModel load_kr(const Eigen::Matrix2d& theta, int k);

// Validated constructors from raw parameters.
ErModel make_er(std::size_t n0, double p0);
ClModel make_cl(std::vector<double> degrees);
SbModel make_sb(std::vector<int> block_of, Eigen::MatrixXd block_prob);

// Partition file: one "node block" pair per line, '#' comments allowed.
// Every node in [0, n) must appear exactly once; block ids are relabeled to
// 0..c-1 in ascending id order.
std::vector<int> read_partition(const std::filesystem::path& path, std::size_t n);

// Convenience partitioner (not a fitted quantity): buckets nodes by
// floor(log2(degree + 1)), dropping empty buckets.
std::vector<int> degree_bucket_partition(const Graph& g);

}  // namespace epgm
