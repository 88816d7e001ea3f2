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

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "epgm/error.hpp"
#include "epgm/expected_counts.hpp"
#include "epgm/fitting.hpp"
#include "epgm/io.hpp"
#include "epgm/motif.hpp"
#include "epgm/oracle.hpp"
#include "epgm/realization.hpp"
#include "epgm/rng.hpp"
#include "epgm/stats.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace epgm;

namespace {

constexpr std::uint64_t kDefaultSeed = 1;

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag,
                           std::optional<std::uint64_t> fallback = std::nullopt) {
  if (flag) return *flag;
  const std::uint64_t seed = fallback.value_or(kDefaultSeed);
  std::cerr << "seed: " << seed << (fallback ? " (from binding file)" : " (default)") << '\n';
  return seed;
}

// Edge-list files of a directory in name order.
std::vector<fs::path> graph_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw DataError(dir.string() + " is not a directory");
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  if (out.empty()) throw DataError("no edge lists (*.txt) in " + dir.string());
  return out;
}

std::vector<Graph> read_graphs(const std::vector<fs::path>& files) {
  std::vector<Graph> out;
  out.reserve(files.size());
  for (const auto& f : files) out.push_back(read_edge_list(f));
  return out;
}

std::array<double, 3> parse_triple(const std::string& text) {
  std::array<double, 3> out{};
  std::stringstream in(text);
  std::string item;
  int i = 0;
  while (std::getline(in, item, ',')) {
    if (i == 3) throw UsageError("expected three comma-separated values: " + text);
    try {
      out[i++] = std::stod(item);
    } catch (const std::exception&) {
      throw UsageError("not a number: " + item);
    }
  }
  if (i != 3) throw UsageError("expected three comma-separated values: " + text);
  return out;
}

MotifScheme motif_scheme_from_string(const std::string& s) {
  if (s == "eigm") return MotifScheme::kEdgeIndependent;
  if (s == "maximal") return MotifScheme::kMaximal;
  if (s == "local") return MotifScheme::kLocalBinding;
  if (s == "parallel") return MotifScheme::kParallelBinding;
  throw UsageError("unknown scheme '" + s + "'");
}

std::string_view to_string(MotifScheme s) {
  switch (s) {
    case MotifScheme::kEdgeIndependent:
      return "eigm";
    case MotifScheme::kMaximal:
      return "maximal";
    case MotifScheme::kLocalBinding:
      return "local";
    case MotifScheme::kParallelBinding:
      return "parallel";
  }
  return "eigm";
}

std::string subset_label(unsigned mask) {
  static const char* kNames[] = {"e12", "e13", "e23"};
  std::string out = "{";
  for (int e = 0; e < 3; ++e) {
    if (!(mask >> e & 1u)) continue;
    if (out.size() > 1) out += ',';
    out += kNames[e];
  }
  return out + "}";
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << text;
}

void emit_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

// Mean and standard deviation per CCDF point; missing points count as 0.
struct CcdfSummary {
  std::vector<double> mean, sd;
};

CcdfSummary summarize(const std::vector<std::vector<CcdfPoint>>& curves) {
  std::size_t len = 0;
  for (const auto& c : curves) len = std::max(len, c.size());
  CcdfSummary s{std::vector<double>(len, 0.0), std::vector<double>(len, 0.0)};
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      s.mean[i] += c[i].count;
      s.sd[i] += c[i].count * c[i].count;
    }
  }
  const double n = static_cast<double>(curves.size());
  for (std::size_t i = 0; i < len; ++i) {
    s.mean[i] /= n;
    s.sd[i] = std::sqrt(std::max(0.0, s.sd[i] / n - s.mean[i] * s.mean[i]));
  }
  return s;
}

std::string ccdf_csv(const std::string& key, const std::vector<CcdfPoint>& reference,
                     const CcdfSummary& gen) {
  std::ostringstream out;
  out << key << ",reference,mean,std\n";
  const std::size_t len = std::max(reference.size(), gen.mean.size());
  for (std::size_t i = 0; i < len; ++i) {
    out << i + 1 << ',' << (i < reference.size() ? reference[i].count : 0.0) << ','
        << (i < gen.mean.size() ? gen.mean[i] : 0.0) << ',' << (i < gen.sd.size() ? gen.sd[i] : 0.0)
        << '\n';
  }
  return out.str();
}

struct MeanSd {
  double mean = 0, sd = 0;
};

MeanSd mean_sd(const std::vector<double>& xs) {
  MeanSd r;
  for (double x : xs) r.mean += x;
  r.mean /= static_cast<double>(xs.size());
  for (double x : xs) r.sd += (x - r.mean) * (x - r.mean);
  r.sd = std::sqrt(r.sd / static_cast<double>(xs.size()));
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge-dependent random graph generation with binding schemes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "epgm 1.0");

  int threads = 1;
  auto add_threads = [&](CLI::App* cmd) {
    cmd->add_option("--threads", threads, "Worker threads")->envname("EPGM_THREADS")->check(CLI::PositiveNumber);
  };

  // fit-model
  auto* fit_model = app.add_subcommand("fit-model", "Fit an edge probability model to a graph");
  std::string fm_graph, fm_model, fm_partition, fm_theta, fm_out;
  int fm_k = 0;
  bool fm_buckets = false;
  fit_model->add_option("graph", fm_graph, "Edge list (not read for kr)");
  fit_model->add_option("--model", fm_model, "er|cl|sb|kr")->required()->check(CLI::IsMember({"er", "cl", "sb", "kr"}));
  fit_model->add_option("--partition", fm_partition, "SB partition file (node block per line)");
  fit_model->add_flag("--degree-buckets", fm_buckets, "SB partition by floor(log2(degree+1))");
  fit_model->add_option("--theta", fm_theta, "KR seed matrix file: a b / b c");
  fit_model->add_option("--k", fm_k, "KR Kronecker power (default: ceil(log2 n) of the graph)");
  fit_model->add_option("--out", fm_out, "Output model JSON (default stdout)");
  fit_model->callback([&] {
    EdgeProbModel m;
    if (fm_model == "kr") {
      if (fm_theta.empty()) throw UsageError("--model kr needs --theta (seed matrices are not learned)");
      if (fm_k <= 0) {
        // Without --k the graph is padded to 2^ceil(log2 n) nodes.
        if (fm_graph.empty()) throw UsageError("--model kr needs --k or an edge list");
        const std::size_t n = read_edge_list(fs::path(fm_graph)).num_nodes();
        fm_k = 1;
        while ((std::size_t{1} << fm_k) < n) ++fm_k;
      }
      std::ifstream in(fm_theta);
      if (!in) throw DataError("cannot read " + fm_theta);
      Eigen::Matrix2d theta;
      for (int i = 0; i < 4; ++i) {
        if (!(in >> theta(i / 2, i % 2))) throw DataError("theta file needs four numbers");
      }
      m = load_kr(theta, fm_k);
    } else {
      if (fm_graph.empty()) throw UsageError("fit-model needs an edge list");
      const Graph g = read_edge_list(fs::path(fm_graph));
      if (fm_model == "er") {
        m = fit_er(g);
      } else if (fm_model == "cl") {
        m = fit_cl(g);
      } else {
        if (fm_partition.empty() == !fm_buckets) throw UsageError("--model sb needs exactly one of --partition or --degree-buckets");
        const auto blocks = fm_buckets ? degree_bucket_partition(g) : read_partition(fm_partition, g.num_nodes());
        m = fit_sb(g, blocks);
      }
    }
    emit_json(fm_out, model_to_json(m));
  });

  // fit-binding
  auto* fit_bind = app.add_subcommand("fit-binding", "Fit node-sampling probabilities g");
  std::string fb_model, fb_graph, fb_scheme = "local", fb_objective = "triangles", fb_residual = "shared", fb_out,
                                  fb_report, fb_adjusted;
  std::optional<double> fb_triangles, fb_wedges, fb_edges;
  std::optional<int> fb_rounds;
  std::optional<std::uint64_t> fb_seed;
  bool fb_joint = false;
  FitOptions fb_opts;
  fit_bind->add_option("--model", fb_model, "Model JSON")->required();
  fit_bind->add_option("--graph", fb_graph, "Target graph (edge list)");
  fit_bind->add_option("--triangles", fb_triangles, "Target triangle count");
  fit_bind->add_option("--wedges", fb_wedges, "Target wedge count");
  fit_bind->add_option("--edges", fb_edges, "Edge count kept by the joint-mode penalty");
  fit_bind->add_option("--scheme", fb_scheme, "local|parallel")->check(CLI::IsMember({"local", "parallel"}));
  fit_bind->add_option("--rounds", fb_rounds, "R (default 1000 local, 32 parallel)");
  fit_bind->add_option("--objective", fb_objective, "triangles|triangles+wedges")
      ->check(CLI::IsMember({"triangles", "triangles+wedges"}));
  fit_bind->add_option("--residual", fb_residual, "shared|independent")->check(CLI::IsMember({"shared", "independent"}));
  fit_bind->add_flag("--joint", fb_joint, "Also fit per-class-pair edge probabilities");
  fit_bind->add_option("--edge-penalty", fb_opts.edge_penalty, "Joint-mode edge-count penalty weight");
  fit_bind->add_option("--init-g", fb_opts.initial_g, "Starting g for every class")->check(CLI::Range(1e-6, 1 - 1e-6));
  fit_bind->add_option("--max-iterations", fb_opts.max_iterations, "Iteration cap");
  fit_bind->add_option("--seed", fb_seed, "Seed recorded in the binding file");
  fit_bind->add_option("--out", fb_out, "Binding JSON (default stdout)");
  fit_bind->add_option("--report", fb_report, "FitReport JSON");
  fit_bind->add_option("--adjusted-model", fb_adjusted, "Joint mode: write the adjusted model JSON");
  fit_bind->callback([&] {
    const EdgeProbModel m = model_from_json(read_json(fb_model));
    FitObjective obj;
    obj.kind = fb_objective == "triangles" ? ObjectiveKind::kTriangles : ObjectiveKind::kTrianglesAndWedges;
    if (!fb_graph.empty()) {
      const Graph g = read_edge_list(fs::path(fb_graph));
      StatsOptions so;
      so.distances = false;
      const GraphStats s = compute_stats(g, so);
      obj.triangles = static_cast<double>(s.triangle_count);
      obj.wedges = static_cast<double>(s.wedge_count);
      obj.edges = static_cast<double>(s.num_edges);
    } else if (!fb_triangles) {
      throw UsageError("give --graph or --triangles");
    }
    if (fb_triangles) obj.triangles = *fb_triangles;
    if (fb_wedges) obj.wedges = *fb_wedges;
    if (fb_edges) obj.edges = *fb_edges;
    if (obj.kind == ObjectiveKind::kTrianglesAndWedges && !(obj.wedges > 0)) {
      throw UsageError("triangles+wedges needs --graph or --wedges");
    }
    const Scheme scheme = scheme_from_string(fb_scheme);
    const int rounds = fb_rounds.value_or(scheme == Scheme::kLocalBinding ? kDefaultLocalRounds : kDefaultParallelRounds);
    fb_opts.residual = residual_from_string(fb_residual);
    if (fb_joint && obj.kind != ObjectiveKind::kTrianglesAndWedges) {
      throw UsageError("--joint needs --objective triangles+wedges");
    }
    const FitReport r = fb_joint ? fit_binding_joint(m, scheme, rounds, obj, fb_opts)
                                 : fit_binding(m, scheme, rounds, obj, fb_opts);
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
    const std::uint64_t seed = resolve_seed(fb_seed);
    emit_json(fb_out, binding_to_json(r.binding(), seed));
    if (!fb_report.empty()) write_json(fb_report, fit_report_to_json(r));
    if (!fb_adjusted.empty()) write_json(fb_adjusted, model_to_json(adjusted_model(m, r)));
  });

  // generate
  auto* generate = app.add_subcommand("generate", "Generate a batch of graphs");
  std::string gen_model, gen_binding, gen_out;
  std::size_t gen_count = 1;
  std::optional<std::uint64_t> gen_seed;
  generate->add_option("--model", gen_model, "Model JSON")->required();
  generate->add_option("--binding", gen_binding, "Binding JSON (default: edge-independent)");
  generate->add_option("--count", gen_count, "Number of graphs")->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen_seed, "Master seed");
  generate->add_option("--out", gen_out, "Output directory")->required();
  add_threads(generate);
  generate->callback([&] {
    const EdgeProbModel m = model_from_json(read_json(gen_model));
    BindingParams b;
    std::optional<std::uint64_t> file_seed;
    if (!gen_binding.empty()) {
      const json j = read_json(gen_binding);
      b = binding_from_json(j);
      if (j.contains("seed")) file_seed = j["seed"].get<std::uint64_t>();
    }
    validate(b, m);
    const std::uint64_t seed = resolve_seed(gen_seed, file_seed);
    fs::create_directories(gen_out);
    std::ostringstream summary;
    summary << "index,file,nodes,edges,triangles,gcc,alcc,seconds\n";
    const int width = std::max<int>(4, static_cast<int>(std::to_string(gen_count - 1).size()));
    for (std::size_t i = 0; i < gen_count; ++i) {
      const auto t0 = Clock::now();
      const std::uint64_t child = derive_seed(seed, StreamTag::kBatch, i);
      const Graph g(num_nodes(m), realize(m, b, child, threads));
      const double elapsed = seconds_since(t0);
      std::ostringstream name;
      name << "graph_" << std::setw(width) << std::setfill('0') << i << ".txt";
      write_edge_list(fs::path(gen_out) / name.str(), g);
      StatsOptions so;
      so.distances = false;
      const GraphStats s = compute_stats(g, so);
      summary << i << ',' << name.str() << ',' << s.num_nodes << ',' << s.num_edges << ',' << s.triangle_count
              << ',' << s.gcc << ',' << s.alcc << ',' << elapsed << '\n';
    }
    write_text((fs::path(gen_out) / "summary.csv").string(), summary.str());
  });

  // stats
  auto* stats = app.add_subcommand("stats", "Statistics of one graph");
  std::string st_graph, st_format = "text", st_out;
  std::optional<std::size_t> st_sources;
  stats->add_option("graph", st_graph, "Edge list")->required();
  stats->add_option("--format", st_format, "text|json|csv")->check(CLI::IsMember({"text", "json", "csv"}));
  stats->add_option("--distance-sources", st_sources, "BFS sources for the distance distribution (default all)");
  stats->add_option("--out", st_out, "Output file (default stdout)");
  stats->callback([&] {
    StatsOptions so;
    so.distance_sources = st_sources;
    const GraphStats s = compute_stats(read_edge_list(fs::path(st_graph)), so);
    if (st_format == "json") {
      emit_json(st_out, stats_to_json(s));
    } else if (st_format == "csv") {
      std::ostringstream out;
      out << "nodes,edges,triangles,wedges,gcc,alcc,lcc_size\n"
          << s.num_nodes << ',' << s.num_edges << ',' << s.triangle_count << ',' << s.wedge_count << ',' << s.gcc
          << ',' << s.alcc << ',' << s.lcc_size << '\n';
      write_text(st_out, out.str());
    } else {
      std::ostringstream out;
      out << "nodes      " << s.num_nodes << "\nedges      " << s.num_edges << "\ntriangles  " << s.triangle_count
          << "\nwedges     " << s.wedge_count << "\ngcc        " << s.gcc << "\nalcc       " << s.alcc
          << "\nlcc nodes  " << s.lcc_size << '\n';
      write_text(st_out, out.str());
    }
  });

  // compare
  auto* compare = app.add_subcommand("compare", "Compare generated graphs with a reference graph");
  std::string cmp_ref, cmp_dir, cmp_format = "text", cmp_prefix, cmp_out;
  std::size_t cmp_sources = 100;
  compare->add_option("reference", cmp_ref, "Reference edge list")->required();
  compare->add_option("generated", cmp_dir, "Directory of generated edge lists")->required();
  compare->add_option("--format", cmp_format, "text|json|csv")->check(CLI::IsMember({"text", "json", "csv"}));
  compare->add_option("--ccdf-prefix", cmp_prefix, "Write <prefix>degree_ccdf.csv and <prefix>distance_ccdf.csv");
  compare->add_option("--distance-sources", cmp_sources, "BFS sources per graph (0 = all)");
  compare->add_option("--out", cmp_out, "Report file (default stdout)");
  compare->callback([&] {
    StatsOptions so;
    if (cmp_sources > 0) so.distance_sources = cmp_sources;
    so.distances = !cmp_prefix.empty();
    const GraphStats ref = compute_stats(read_edge_list(fs::path(cmp_ref)), so);
    const auto graphs = read_graphs(graph_files(cmp_dir));
    std::vector<double> tri, gcc, alcc;
    std::vector<std::vector<CcdfPoint>> deg, dist;
    for (const Graph& g : graphs) {
      if (g.num_nodes() != ref.num_nodes) throw DataError("generated graphs must have the reference node count");
      const GraphStats s = compute_stats(g, so);
      tri.push_back(ref.triangle_count ? static_cast<double>(s.triangle_count) / static_cast<double>(ref.triangle_count) : 0.0);
      gcc.push_back(s.gcc);
      alcc.push_back(s.alcc);
      deg.push_back(s.degree_ccdf);
      dist.push_back(s.distance_ccdf);
    }
    const double overlap = graphs.size() >= 2 ? empirical_overlap(graphs) : std::nan("");
    const MeanSd t = mean_sd(tri), c = mean_sd(gcc), a = mean_sd(alcc);
    if (!cmp_prefix.empty()) {
      write_text(cmp_prefix + "degree_ccdf.csv", ccdf_csv("degree", ref.degree_ccdf, summarize(deg)));
      write_text(cmp_prefix + "distance_ccdf.csv", ccdf_csv("distance", ref.distance_ccdf, summarize(dist)));
    }
    if (cmp_format == "json") {
      emit_json(cmp_out, {{"graphs", graphs.size()},
                          {"normalized_triangles", {{"mean", t.mean}, {"std", t.sd}}},
                          {"gcc", {{"mean", c.mean}, {"std", c.sd}, {"reference", ref.gcc}}},
                          {"alcc", {{"mean", a.mean}, {"std", a.sd}, {"reference", ref.alcc}}},
                          {"overlap", overlap}});
    } else if (cmp_format == "csv") {
      std::ostringstream out;
      out << "graphs,triangles_mean,triangles_std,gcc_mean,gcc_std,gcc_reference,alcc_mean,alcc_std,alcc_reference,overlap\n"
          << graphs.size() << ',' << t.mean << ',' << t.sd << ',' << c.mean << ',' << c.sd << ',' << ref.gcc << ','
          << a.mean << ',' << a.sd << ',' << ref.alcc << ',' << overlap << '\n';
      write_text(cmp_out, out.str());
    } else {
      std::ostringstream out;
      out << std::fixed << std::setprecision(2) << "graphs " << graphs.size() << "\n"
          << "            tri    gcc    alcc   overlap\n"
          << "reference   1.00   " << ref.gcc << "   " << ref.alcc << "\n"
          << "generated   " << t.mean << "   " << c.mean << "   " << a.mean << "   " << overlap << "\n"
          << "std         " << t.sd << "   " << c.sd << "   " << a.sd << '\n';
      write_text(cmp_out, out.str());
    }
  });

  // overlap
  auto* overlap_cmd = app.add_subcommand("overlap", "Empirical or analytic overlap");
  std::vector<std::string> ov_inputs;
  std::string ov_model;
  overlap_cmd->add_option("inputs", ov_inputs, "Edge lists or one directory of them");
  overlap_cmd->add_option("--model", ov_model, "Model JSON: print sum p^2 / sum p instead");
  overlap_cmd->callback([&] {
    if (!ov_model.empty()) {
      std::cout << analytic_overlap(model_from_json(read_json(ov_model))) << '\n';
      return;
    }
    std::vector<fs::path> files;
    if (ov_inputs.size() == 1 && fs::is_directory(ov_inputs[0])) {
      files = graph_files(ov_inputs[0]);
    } else {
      files.assign(ov_inputs.begin(), ov_inputs.end());
    }
    if (files.size() < 2) throw UsageError("overlap needs at least two graphs or --model");
    const auto graphs = read_graphs(files);
    std::cout << empirical_overlap(graphs) << '\n';
  });

  // motif-probs
  auto* motif = app.add_subcommand("motif-probs", "Labeled 3-motif probabilities of one node triple");
  std::string mp_p, mp_g = "0,0,0", mp_scheme = "eigm", mp_residual = "shared", mp_params;
  int mp_rounds = 1;
  motif->add_option("--p", mp_p, "p12,p13,p23");
  motif->add_option("--g", mp_g, "g1,g2,g3");
  motif->add_option("--rounds", mp_rounds, "R")->check(CLI::NonNegativeNumber);
  motif->add_option("--scheme", mp_scheme, "eigm|maximal|local|parallel");
  motif->add_option("--residual", mp_residual, "shared|independent");
  motif->add_option("--params", mp_params, "Triple JSON {p, g, R, scheme, residual_coupling}");
  motif->callback([&] {
    TripleSpec<double> t;
    if (!mp_params.empty()) {
      const json j = read_json(mp_params);
      try {
        for (int i = 0; i < 3; ++i) t.p[i] = j.at("p").at(i).get<double>();
        if (j.contains("g")) {
          for (int i = 0; i < 3; ++i) t.g[i] = j["g"].at(i).get<double>();
        }
        t.rounds = j.value("R", 1);
        t.scheme = motif_scheme_from_string(j.value("scheme", std::string("eigm")));
        t.residual = residual_from_string(j.value("residual_coupling", std::string("shared")));
      } catch (const json::exception& e) {
        throw DataError(std::string("bad triple file: ") + e.what());
      }
    } else {
      if (mp_p.empty()) throw UsageError("give --p or --params");
      t.p = parse_triple(mp_p);
      t.g = parse_triple(mp_g);
      t.rounds = mp_rounds;
      t.scheme = motif_scheme_from_string(mp_scheme);
      t.residual = residual_from_string(mp_residual);
    }
    for (double x : t.p) {
      if (!(x >= 0 && x <= 1)) throw DataError("p values must lie in [0, 1]");
    }
    for (double x : t.g) {
      if (!(x >= 0 && x <= 1)) throw DataError("g values must lie in [0, 1]");
    }
    if (t.scheme == MotifScheme::kParallelBinding && t.rounds < 1) throw DataError("parallel binding needs R >= 1");
    const auto d = motif3(t);
    std::cout << "subset,probability\n" << std::setprecision(12);
    for (unsigned mask = 0; mask < 8; ++mask) std::cout << subset_label(mask) << ',' << d[mask] << '\n';
  });

  // expected-counts
  auto* expected = app.add_subcommand("expected-counts", "Expected triangles, wedges and overlap");
  std::string ec_model, ec_binding, ec_format = "json";
  expected->add_option("--model", ec_model, "Model JSON")->required();
  expected->add_option("--binding", ec_binding, "Binding JSON (default: edge-independent)");
  expected->add_option("--format", ec_format, "json|text")->check(CLI::IsMember({"json", "text"}));
  expected->callback([&] {
    const EdgeProbModel m = model_from_json(read_json(ec_model));
    const BindingParams b = ec_binding.empty() ? BindingParams{} : binding_from_json(read_json(ec_binding));
    const ExpectedCounts c = expected_counts(m, b);
    const double edges = expected_edges(m);
    const double ov = analytic_overlap(m);
    if (ec_format == "json") {
      std::cout << json{{"triangles", c.triangles}, {"wedges", c.wedges}, {"edges", edges}, {"overlap", ov}}.dump(2)
                << '\n';
    } else {
      std::cout << std::setprecision(10) << "triangles " << c.triangles << "\nwedges    " << c.wedges
                << "\nedges     " << edges << "\noverlap   " << ov << '\n';
    }
  });

  // oracle-check
  auto* oracle = app.add_subcommand("oracle-check", "Closed forms against Monte Carlo on random triples");
  std::size_t oc_configs = 50;
  std::uint64_t oc_trials = 100000;
  std::optional<std::uint64_t> oc_seed;
  std::string oc_out;
  oracle->add_option("--configs", oc_configs, "Configurations per scheme");
  oracle->add_option("--trials", oc_trials, "Monte Carlo trials per configuration (>= 10000)");
  oracle->add_option("--seed", oc_seed, "Seed");
  oracle->add_option("--out", oc_out, "CSV output (default stdout)");
  bool oracle_failed = false;
  oracle->callback([&] {
    const auto rows = oracle_sweep(oc_configs, oc_trials, resolve_seed(oc_seed));
    std::ostringstream out;
    out << "config,scheme,residual,p12,p13,p23,g1,g2,g3,R,outcome,closed_form,estimate,std_error,z,pass\n"
        << std::setprecision(8);
    std::size_t failures = 0;
    for (const auto& r : rows) {
      out << r.config << ',' << to_string(r.scheme) << ',' << to_string(r.residual);
      for (double x : r.spec.p) out << ',' << x;
      for (double x : r.spec.g) out << ',' << x;
      out << ',' << r.spec.rounds << ',' << subset_label(r.outcome) << ',' << r.closed_form << ',' << r.estimate
          << ',' << r.std_error << ',' << r.z << ',' << (r.pass ? "pass" : "fail") << '\n';
      failures += !r.pass;
    }
    write_text(oc_out, out.str());
    std::cerr << rows.size() - failures << "/" << rows.size() << " comparisons within 4 standard errors\n";
    oracle_failed = failures > 0;
  });

  // benchmark
  auto* bench = app.add_subcommand("benchmark", "Generation time per scheme");
  std::string bm_model, bm_local, bm_parallel;
  std::size_t bm_count = 5;
  std::optional<std::uint64_t> bm_seed;
  bench->add_option("--model", bm_model, "Model JSON")->required();
  bench->add_option("--local", bm_local, "Local-binding JSON (default g = 0.1, R = 1000)");
  bench->add_option("--parallel", bm_parallel, "Parallel-binding JSON (default g = 0.1, R = 32)");
  bench->add_option("--count", bm_count, "Graphs per variant")->check(CLI::PositiveNumber);
  bench->add_option("--seed", bm_seed, "Seed");
  add_threads(bench);
  bench->callback([&] {
    const EdgeProbModel m = model_from_json(read_json(bm_model));
    const auto c = static_cast<Eigen::Index>(num_classes(m));
    auto load = [&](const std::string& path, Scheme scheme, int rounds) {
      if (!path.empty()) return binding_from_json(read_json(path));
      BindingParams b;
      b.scheme = scheme;
      b.rounds = rounds;
      b.g = Eigen::VectorXd::Constant(c, 0.1);
      return b;
    };
    const BindingParams local = load(bm_local, Scheme::kLocalBinding, kDefaultLocalRounds);
    const BindingParams parallel = load(bm_parallel, Scheme::kParallelBinding, kDefaultParallelRounds);
    const std::uint64_t seed = resolve_seed(bm_seed);
    struct Row {
      std::string scheme, variant;
      int threads;
      double seconds;
    };
    std::vector<Row> rows;
    auto time_it = [&](const BindingParams& b, int t) {
      const auto t0 = Clock::now();
      for (std::size_t i = 0; i < bm_count; ++i) realize(m, b, derive_seed(seed, StreamTag::kBatch, i), t);
      return seconds_since(t0) / static_cast<double>(bm_count);
    };
    rows.push_back({"eigm", "serial", 1, time_it(BindingParams{}, 1)});
    rows.push_back({"local", "serial", 1, time_it(local, 1)});
    rows.push_back({"parallel", "serialized", 1, time_it(parallel, 1)});
    rows.push_back({"parallel", "threaded", threads, time_it(parallel, threads)});
    std::cout << "scheme,variant,threads,seconds_per_graph\n";
    for (const auto& r : rows) std::cout << r.scheme << ',' << r.variant << ',' << r.threads << ',' << r.seconds << '\n';
    auto order = rows;
    std::sort(order.begin(), order.end(), [](const Row& a, const Row& b) { return a.seconds < b.seconds; });
    std::cerr << "fastest to slowest:";
    for (const auto& r : order) std::cerr << ' ' << r.scheme << '/' << r.variant;
    std::cerr << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnsupportedQuery& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumerical;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
  return oracle_failed ? kNumerical : kOk;
}
