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

#include "epgm/io.hpp"

#include <fstream>
#include <string>

#include "epgm/error.hpp"

namespace epgm {

using nlohmann::json;

namespace {

template <class... F>
struct Overload : F... {
  using F::operator()...;
};

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  const auto rows = j.size();
  Eigen::MatrixXd m(rows, rows);
  for (std::size_t i = 0; i < rows; ++i) {
    if (j[i].size() != rows) throw DataError("matrix must be square");
    for (std::size_t k = 0; k < rows; ++k) m(i, k) = j[i][k].get<double>();
  }
  return m;
}

std::vector<double> vector_to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

json ccdf_to_json(const std::vector<CcdfPoint>& points) {
  json out = json::array();
  for (const CcdfPoint& p : points) out.push_back({p.at, p.count});
  return out;
}

}  // namespace

json model_to_json(const EdgeProbModel& m) {
  return std::visit(
      Overload{
          [](const ErModel& er) -> json { return {{"model", "er"}, {"n0", er.n0}, {"p0", er.p0}}; },
          [](const ClModel& cl) -> json { return {{"model", "cl"}, {"degrees", cl.degrees}}; },
          [](const SbModel& sb) -> json {
            return {{"model", "sb"}, {"blocks", sb.block_of}, {"pB", matrix_to_json(sb.block_prob)}};
          },
          [](const KrModel& kr) -> json {
            return {{"model", "kr"}, {"theta", matrix_to_json(kr.theta)}, {"k", kr.k}};
          },
      },
      m);
}

EdgeProbModel model_from_json(const json& j) {
  try {
    const std::string kind = j.at("model").get<std::string>();
    if (kind == "er") return make_er(j.at("n0").get<std::size_t>(), j.at("p0").get<double>());
    if (kind == "cl") return make_cl(j.at("degrees").get<std::vector<double>>());
    if (kind == "sb") {
      return make_sb(j.at("blocks").get<std::vector<int>>(), matrix_from_json(j.at("pB")));
    }
    if (kind == "kr") {
      const Eigen::MatrixXd theta = matrix_from_json(j.at("theta"));
      if (theta.rows() != 2) throw DataError("theta must be 2x2");
      return load_kr(theta, j.at("k").get<int>());
    }
    throw DataError("unknown model '" + kind + "'");
  } catch (const json::exception& e) {
    throw DataError(std::string("bad model file: ") + e.what());
  }
}

json binding_to_json(const BindingParams& b, std::uint64_t seed) {
  return {{"scheme", to_string(b.scheme)},
          {"R", b.rounds},
          {"g", vector_to_std(b.g)},
          {"residual_coupling", to_string(b.residual)},
          {"seed", seed}};
}

BindingParams binding_from_json(const json& j) {
  try {
    BindingParams b;
    b.scheme = scheme_from_string(j.at("scheme").get<std::string>());
    b.rounds = b.scheme == Scheme::kParallelBinding ? kDefaultParallelRounds
               : b.scheme == Scheme::kLocalBinding  ? kDefaultLocalRounds
                                                    : 0;
    if (j.contains("R")) b.rounds = j["R"].get<int>();
    if (j.contains("g")) {
      const auto g = j["g"].get<std::vector<double>>();
      b.g = Eigen::Map<const Eigen::VectorXd>(g.data(), static_cast<Eigen::Index>(g.size()));
    }
    if (j.contains("residual_coupling")) {
      b.residual = residual_from_string(j["residual_coupling"].get<std::string>());
    }
    return b;
  } catch (const json::exception& e) {
    throw DataError(std::string("bad binding file: ") + e.what());
  }
}

json fit_report_to_json(const FitReport& r) {
  json out = {{"scheme", to_string(r.scheme)},
              {"R", r.rounds},
              {"residual_coupling", to_string(r.residual)},
              {"iterations", r.iterations},
              {"objective_trace", r.objective_trace},
              {"g", vector_to_std(r.g)},
              {"achieved",
               {{"triangles", r.achieved.triangles},
                {"wedges", r.achieved.wedges},
                {"edges", r.achieved_edges}}},
              {"converged", r.converged},
              {"warnings", r.warnings}};
  if (r.pair_prob) out["pair_prob"] = matrix_to_json(*r.pair_prob);
  return out;
}

json stats_to_json(const GraphStats& s) {
  return {{"nodes", s.num_nodes},
          {"edges", s.num_edges},
          {"triangles", s.triangle_count},
          {"wedges", s.wedge_count},
          {"gcc", s.gcc},
          {"alcc", s.alcc},
          {"lcc_size", s.lcc_size},
          {"degree_ccdf", ccdf_to_json(s.degree_ccdf)},
          {"distance_ccdf", ccdf_to_json(s.distance_ccdf)}};
}

Scheme scheme_from_string(std::string_view s) {
  if (s == "eigm") return Scheme::kEdgeIndependent;
  if (s == "local") return Scheme::kLocalBinding;
  if (s == "parallel") return Scheme::kParallelBinding;
  throw DataError("unknown scheme '" + std::string(s) + "'");
}

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::kEdgeIndependent:
      return "eigm";
    case Scheme::kLocalBinding:
      return "local";
    case Scheme::kParallelBinding:
      return "parallel";
  }
  return "eigm";
}

ResidualCoupling residual_from_string(std::string_view s) {
  if (s == "shared") return ResidualCoupling::kShared;
  if (s == "independent") return ResidualCoupling::kIndependent;
  throw DataError("unknown residual coupling '" + std::string(s) + "'");
}

std::string_view to_string(ResidualCoupling r) {
  return r == ResidualCoupling::kShared ? "shared" : "independent";
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace epgm
