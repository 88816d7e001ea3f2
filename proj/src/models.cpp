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

#include "epgm/models.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "epgm/error.hpp"

namespace epgm {

namespace {

template <class... Fs>
struct Overload : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overload(Fs...) -> Overload<Fs...>;

void check_prob(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw DataError(std::string(what) + " must lie in [0, 1]");
}

}  // namespace

ModelKind model_kind(const EdgeProbModel& m) {
  return std::visit(Overload{[](const ErModel&) { return ModelKind::kEr; },
                             [](const ClModel&) { return ModelKind::kCl; },
                             [](const SbModel&) { return ModelKind::kSb; },
                             [](const KrModel&) { return ModelKind::kKr; }},
                    m);
}

std::string_view model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::kEr:
      return "er";
    case ModelKind::kCl:
      return "cl";
    case ModelKind::kSb:
      return "sb";
    case ModelKind::kKr:
      return "kr";
  }
  return "?";
}

std::size_t num_nodes(const EdgeProbModel& m) {
  return std::visit(Overload{[](const ErModel& er) { return er.n0; },
                             [](const ClModel& cl) { return cl.degrees.size(); },
                             [](const SbModel& sb) { return sb.block_of.size(); },
                             [](const KrModel& kr) { return std::size_t{1} << kr.k; }},
                    m);
}

double kr_pattern_prob(const KrModel& m, int n00, int n01, int n10, int n11) {
  return std::pow(m.theta(0, 0), n00) * std::pow(m.theta(0, 1), n01) *
         std::pow(m.theta(1, 0), n10) * std::pow(m.theta(1, 1), n11);
}

double edge_prob(const EdgeProbModel& m, NodeId u, NodeId v) {
  return std::visit(
      Overload{[](const ErModel& er) { return er.p0; },
               [&](const ClModel& cl) {
                 if (cl.degree_sum <= 0) return 0.0;
                 return std::min(cl.degrees[u] * cl.degrees[v] / cl.degree_sum, 1.0);
               },
               [&](const SbModel& sb) { return sb.block_prob(sb.block_of[u], sb.block_of[v]); },
               [&](const KrModel& kr) {
                 const unsigned mask = (1u << kr.k) - 1u;
                 const int n11 = std::popcount(u & v);
                 const int n10 = std::popcount(u & ~v & mask);
                 const int n01 = std::popcount(~u & v & mask);
                 const int n00 = kr.k - n11 - n10 - n01;
                 return kr_pattern_prob(kr, n00, n01, n10, n11);
               }},
      m);
}

ClassStructure class_structure(const EdgeProbModel& m) {
  ClassStructure cs;
  const std::size_t n = num_nodes(m);
  cs.class_of.resize(n);
  std::visit(Overload{[&](const ErModel&) { std::fill(cs.class_of.begin(), cs.class_of.end(), 0); },
                      [&](const ClModel& cl) { cs.class_of = cl.class_of; },
                      [&](const SbModel& sb) { cs.class_of = sb.block_of; },
                      [&](const KrModel&) {
                        for (std::size_t v = 0; v < n; ++v) {
                          cs.class_of[v] = std::popcount(static_cast<unsigned>(v));
                        }
                      }},
             m);
  cs.members.resize(num_classes(m));
  for (std::size_t v = 0; v < n; ++v) cs.members[cs.class_of[v]].push_back(static_cast<NodeId>(v));
  return cs;
}

std::size_t num_classes(const EdgeProbModel& m) {
  return std::visit(
      Overload{[](const ErModel&) { return std::size_t{1}; },
               [](const ClModel& cl) { return cl.class_degree.size(); },
               [](const SbModel& sb) { return static_cast<std::size_t>(sb.block_prob.rows()); },
               [](const KrModel& kr) { return static_cast<std::size_t>(kr.k + 1); }},
      m);
}

double class_pair_prob(const EdgeProbModel& m, int a, int b) {
  const int c = static_cast<int>(num_classes(m));
  if (a < 0 || b < 0 || a >= c || b >= c) throw DataError("class id out of range");
  return std::visit(
      Overload{[](const ErModel& er) { return er.p0; },
               [&](const ClModel& cl) {
                 if (cl.degree_sum <= 0) return 0.0;
                 return std::min(cl.class_degree[a] * cl.class_degree[b] / cl.degree_sum, 1.0);
               },
               [&](const SbModel& sb) { return sb.block_prob(a, b); },
               [](const KrModel&) -> double {
                 throw UnsupportedQuery(
                     "KR popcount classes do not determine p; use joint bit-pattern counts");
               }},
      m);
}

ErModel make_er(std::size_t n0, double p0) {
  check_prob(p0, "p0");
  return ErModel{n0, p0};
}

ClModel make_cl(std::vector<double> degrees) {
  ClModel cl;
  for (double d : degrees) {
    if (!(d >= 0.0) || !std::isfinite(d)) throw DataError("CL degrees must be finite and >= 0");
  }
  cl.degrees = std::move(degrees);
  cl.degree_sum = 0;
  for (double d : cl.degrees) cl.degree_sum += d;
  cl.class_degree = cl.degrees;
  std::sort(cl.class_degree.begin(), cl.class_degree.end());
  cl.class_degree.erase(std::unique(cl.class_degree.begin(), cl.class_degree.end()),
                        cl.class_degree.end());
  cl.class_of.resize(cl.degrees.size());
  for (std::size_t v = 0; v < cl.degrees.size(); ++v) {
    auto it = std::lower_bound(cl.class_degree.begin(), cl.class_degree.end(), cl.degrees[v]);
    cl.class_of[v] = static_cast<int>(it - cl.class_degree.begin());
  }
  return cl;
}

SbModel make_sb(std::vector<int> block_of, Eigen::MatrixXd block_prob) {
  const Eigen::Index c = block_prob.rows();
  if (block_prob.cols() != c) throw DataError("pB must be square");
  if (c > 0 && (block_prob - block_prob.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw DataError("pB must be symmetric");
  }
  for (Eigen::Index i = 0; i < c; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) check_prob(block_prob(i, j), "pB entries");
  }
  std::vector<bool> used(c, false);
  for (int b : block_of) {
    if (b < 0 || b >= c) throw DataError("block index out of range");
    used[b] = true;
  }
  if (std::find(used.begin(), used.end(), false) != used.end()) {
    throw DataError("every block must be nonempty");
  }
  return SbModel{std::move(block_of), std::move(block_prob)};
}

ErModel fit_er(const Graph& g) {
  const double n = static_cast<double>(g.num_nodes());
  if (g.num_nodes() < 2) throw DataError("ER fit needs at least two nodes");
  return make_er(g.num_nodes(), 2.0 * static_cast<double>(g.num_edges()) / (n * (n - 1)));
}

ClModel fit_cl(const Graph& g) {
  if (g.num_edges() == 0) throw DataError("CL fit needs at least one edge");
  std::vector<double> degrees(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) degrees[v] = static_cast<double>(g.degree(v));
  return make_cl(std::move(degrees));
}

SbModel fit_sb(const Graph& g, std::span<const int> block_of) {
  if (block_of.size() != g.num_nodes()) throw DataError("partition does not cover every node");
  int c = 0;
  for (int b : block_of) {
    if (b < 0) throw DataError("negative block index");
    c = std::max(c, b + 1);
  }
  Eigen::VectorXd size = Eigen::VectorXd::Zero(c);
  for (int b : block_of) size[b] += 1;
  Eigen::MatrixXd count = Eigen::MatrixXd::Zero(c, c);
  for (const Edge& e : g.edges()) {
    const int a = block_of[e.u], b = block_of[e.v];
    count(a, b) += 1;
    if (a != b) count(b, a) += 1;
  }
  Eigen::MatrixXd prob(c, c);
  for (int i = 0; i < c; ++i) {
    for (int j = 0; j < c; ++j) {
      const double pairs = i == j ? size[i] * (size[i] - 1) / 2 : size[i] * size[j];
      prob(i, j) = pairs > 0 ? count(i, j) / pairs : 0.0;
    }
  }
  return make_sb(std::vector<int>(block_of.begin(), block_of.end()), std::move(prob));
}

KrModel load_kr(const Eigen::Matrix2d& theta, int k) {
  if (k < 1 || k > 30) throw DataError("KR power k must be in [1, 30]");
  if (theta(0, 1) != theta(1, 0)) throw DataError("KR seed matrix must be symmetric");
  for (int i = 0; i < 4; ++i) check_prob(theta.data()[i], "theta entries");
  return KrModel{theta, k};
}

std::vector<int> read_partition(const std::filesystem::path& path, std::size_t n) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read partition: " + path.string());
  std::vector<long long> raw(n, -1);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    long long node = 0, block = 0;
    if (!(fields >> node)) continue;
    if (!(fields >> block)) throw ParseError("expected 'node block'", lineno);
    if (node < 0 || static_cast<std::size_t>(node) >= n) throw ParseError("node out of range", lineno);
    if (block < 0) throw ParseError("negative block id", lineno);
    if (raw[node] >= 0) throw ParseError("node assigned twice", lineno);
    raw[node] = block;
  }
  std::map<long long, int> relabel;
  for (std::size_t v = 0; v < n; ++v) {
    if (raw[v] < 0) throw DataError("node " + std::to_string(v) + " missing from partition");
    relabel.emplace(raw[v], 0);
  }
  int next = 0;
  for (auto& [id, label] : relabel) label = next++;
  std::vector<int> out(n);
  for (std::size_t v = 0; v < n; ++v) out[v] = relabel[raw[v]];
  return out;
}

std::vector<int> degree_bucket_partition(const Graph& g) {
  std::vector<int> bucket(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    bucket[v] = static_cast<int>(std::bit_width(g.degree(v) + 1)) - 1;
  }
  std::vector<int> ids(bucket);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (int& b : bucket) b = static_cast<int>(std::lower_bound(ids.begin(), ids.end(), b) - ids.begin());
  return bucket;
}

}  // namespace epgm
