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

#include "epgm/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>

#include "epgm/error.hpp"

namespace epgm {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n) {
  std::erase_if(edges, [&](const Edge& e) {
    if (e.u >= n || e.v >= n) throw DataError("edge endpoint out of range");
    if (e.u == e.v) {
      ++dropped_loops_;
      return true;
    }
    return false;
  });
  std::sort(edges.begin(), edges.end());
  auto last = std::unique(edges.begin(), edges.end());
  dropped_dups_ = static_cast<std::size_t>(edges.end() - last);
  edges.erase(last, edges.end());
  edges_ = std::move(edges);

  offsets_.assign(n_ + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
  adj_.resize(offsets_[n_]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adj_[fill[e.u]++] = e.v;
    adj_[fill[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < n_; ++v) {
    std::sort(adj_.begin() + offsets_[v], adj_.begin() + offsets_[v + 1]);
  }
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

namespace {

bool parse_u64(std::string_view tok, std::uint64_t& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) toks.push_back(line.substr(i, j - i));
    i = j;
  }
  return toks;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::uint64_t max_id = 0;
  bool any = false;
  std::optional<std::uint64_t> declared_n;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (auto hash = view.find('#'); hash != std::string_view::npos) {
      auto toks = split_ws(view.substr(hash + 1));
      if (toks.size() == 2 && toks[0] == "nodes") {
        std::uint64_t n = 0;
        if (!parse_u64(toks[1], n)) throw ParseError("bad node-count header", lineno);
        declared_n = n;
      }
      view = view.substr(0, hash);
    }
    auto toks = split_ws(view);
    if (toks.empty()) continue;
    if (toks.size() < 2) throw ParseError("expected two node ids", lineno);
    std::uint64_t u = 0, v = 0;
    if (!parse_u64(toks[0], u) || !parse_u64(toks[1], v)) {
      throw ParseError("non-integer node id", lineno);
    }
    if (u > UINT32_MAX - 1 || v > UINT32_MAX - 1) throw ParseError("node id too large", lineno);
    max_id = std::max({max_id, u, v});
    any = true;
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  std::size_t n = any ? max_id + 1 : 0;
  if (declared_n) {
    if (any && *declared_n <= max_id) throw DataError("node-count header smaller than max id + 1");
    n = *declared_n;
  }
  return Graph(n, std::move(edges));
}

Graph read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read edge list: " + path.string());
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# nodes " << g.num_nodes() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_edge_list(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write edge list: " + path.string());
  write_edge_list(out, g);
}

}  // namespace epgm
