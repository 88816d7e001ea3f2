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

#include "epgm/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "epgm/dual.hpp"
#include "epgm/error.hpp"
#include "epgm/motif.hpp"

namespace epgm {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double logit(double p) {
  p = std::clamp(p, 1e-9, 1 - 1e-9);
  return std::log(p / (1 - p));
}

Eigen::VectorXd sigmoid(const Eigen::VectorXd& x) { return x.unaryExpr([](double v) { return sigmoid(v); }); }

template <class T>
T make_var(double value, int slot) {
  if constexpr (std::is_same_v<T, double>) {
    return value;
  } else {
    return T::variable(value, slot);
  }
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw NumericalError(std::string("non-finite ") + what);
}

}  // namespace

BindingParams FitReport::binding() const {
  BindingParams b;
  b.scheme = scheme;
  b.rounds = rounds;
  b.g = g;
  b.residual = residual;
  return b;
}

BindingObjective::BindingObjective(const EdgeProbModel& m, Scheme scheme, int rounds,
                                   FitObjective obj, bool joint, double edge_penalty,
                                   ResidualCoupling residual)
    : scheme_(scheme),
      rounds_(rounds),
      residual_(residual),
      obj_(obj),
      joint_(joint),
      edge_penalty_(edge_penalty) {
  if (scheme == Scheme::kEdgeIndependent) throw DataError("fitting needs a binding scheme");
  if (rounds < (scheme == Scheme::kParallelBinding ? 1 : 0)) throw DataError("invalid R");
  if (!(obj.triangles > 0)) throw DataError("triangle target must be positive");
  if (obj.kind == ObjectiveKind::kTrianglesAndWedges && !(obj.wedges > 0)) {
    throw DataError("wedge target must be positive");
  }
  if (joint && model_kind(m) == ModelKind::kKr) {
    throw UnsupportedQuery("joint fitting supports ER, CL and SB models");
  }
  num_classes_ = static_cast<int>(epgm::num_classes(m));
  terms_ = class_triples(m);
  if (model_kind(m) != ModelKind::kKr) {
    const ClassStructure cs = class_structure(m);
    num_pairs_ = num_classes_ * (num_classes_ + 1) / 2;
    pair_counts_.assign(num_pairs_, 0.0);
    base_pair_prob_.resize(num_pairs_);
    for (int a = 0; a < num_classes_; ++a) {
      for (int b = a; b < num_classes_; ++b) {
        const int id = class_pair_id(a, b, num_classes_);
        pair_counts_[id] = class_pair_count(cs, a, b);
        base_pair_prob_[id] = class_pair_prob(m, a, b);
      }
    }
  }
  if (joint && obj.edges <= 0) {
    double e = 0;
    for (int i = 0; i < num_pairs_; ++i) e += pair_counts_[i] * base_pair_prob_[i];
    obj_.edges = e;
  }
}

Eigen::VectorXd BindingObjective::initial_params(double initial_g) const {
  Eigen::VectorXd x = Eigen::VectorXd::Constant(num_params(), logit(initial_g));
  if (joint_) {
    for (int i = 0; i < num_pairs_; ++i) x[num_classes_ + i] = logit(base_pair_prob_[i]);
  }
  return x;
}

Eigen::VectorXd BindingObjective::node_sampling(const Eigen::VectorXd& params) const {
  return sigmoid(Eigen::VectorXd(params.head(num_classes_)));
}

Eigen::MatrixXd BindingObjective::pair_probs(const Eigen::VectorXd& params) const {
  Eigen::MatrixXd out(num_classes_, num_classes_);
  for (int a = 0; a < num_classes_; ++a) {
    for (int b = 0; b < num_classes_; ++b) {
      const int id = class_pair_id(a, b, num_classes_);
      out(a, b) = joint_ ? sigmoid(params[num_classes_ + id]) : base_pair_prob_[id];
    }
  }
  return out;
}

template <int N>
BindingObjective::Evaluation BindingObjective::accumulate(const Eigen::VectorXd& params,
                                                          bool with_gradient) const {
  const int np = num_params();
  const Eigen::VectorXd g = node_sampling(params);
  Eigen::VectorXd p;
  if (joint_) p = sigmoid(Eigen::VectorXd(params.tail(num_pairs_)));

  Evaluation ev;
  Eigen::VectorXd d_tri = Eigen::VectorXd::Zero(np), d_wedge = Eigen::VectorXd::Zero(np);
  KinkMonitor& monitor = KinkMonitor::local();
  monitor.reset();

  auto run = [&]<class T>(T) {
    TripleSpec<T> t;
    t.scheme = motif_scheme(scheme_);
    t.rounds = rounds_;
    t.residual = residual_;
    for (const TripleTerm& term : terms_) {
      // Tangent slot per distinct parameter touched by this triple.
      std::array<int, N> slot_param;
      int used = 0;
      auto slot_for = [&](int param) {
        for (int s = 0; s < used; ++s) {
          if (slot_param[s] == param) return s;
        }
        slot_param[used] = param;
        return used++;
      };
      for (int i = 0; i < 3; ++i) {
        const int c = term.cls[i];
        t.g[i] = make_var<T>(g[c], slot_for(c));
      }
      for (int e = 0; e < 3; ++e) {
        if (joint_) {
          const int id = term.pair_class[e];
          t.p[e] = make_var<T>(p[id], slot_for(num_classes_ + id));
        } else {
          t.p[e] = T(term.p[e]);
        }
      }
      const TripleMoments<T> mom = triple_moments(t);
      ev.counts.triangles += term.weight * value_of(mom.triangle);
      ev.counts.wedges += term.weight * value_of(mom.wedges);
      if constexpr (!std::is_same_v<T, double>) {
        for (int s = 0; s < used; ++s) {
          d_tri[slot_param[s]] += term.weight * mom.triangle.d[s];
          d_wedge[slot_param[s]] += term.weight * mom.wedges.d[s];
        }
      }
    }
  };
  if (with_gradient) {
    run(Dual<N>());
  } else {
    run(0.0);
  }

  ev.at_kink = monitor.tie;
  ev.min_kink_gap = monitor.min_gap;

  Eigen::VectorXd d_edges = Eigen::VectorXd::Zero(np);
  for (int i = 0; i < num_pairs_; ++i) {
    const double pi = joint_ ? p[i] : base_pair_prob_[i];
    ev.edges += pair_counts_[i] * pi;
    if (joint_) d_edges[num_classes_ + i] = pair_counts_[i];
  }

  const double rt = 1 - ev.counts.triangles / obj_.triangles;
  ev.value = rt * rt;
  Eigen::VectorXd grad = -2 * rt / obj_.triangles * d_tri;
  if (obj_.kind == ObjectiveKind::kTrianglesAndWedges) {
    const double rw = 1 - ev.counts.wedges / obj_.wedges;
    ev.value += rw * rw;
    grad += -2 * rw / obj_.wedges * d_wedge;
  }
  if (joint_ && edge_penalty_ > 0) {
    const double re = 1 - ev.edges / obj_.edges;
    ev.value += edge_penalty_ * re * re;
    grad += -2 * edge_penalty_ * re / obj_.edges * d_edges;
  }
  if (with_gradient) {
    // Chain rule through the logistic map.
    for (int i = 0; i < np; ++i) {
      const double s = i < num_classes_ ? g[i] : p[i - num_classes_];
      grad[i] *= s * (1 - s);
    }
    ev.gradient = grad;
  }
  return ev;
}

double BindingObjective::value(const Eigen::VectorXd& params) const {
  return accumulate<3>(params, false).value;
}

BindingObjective::Evaluation BindingObjective::evaluate(const Eigen::VectorXd& params) const {
  return joint_ ? accumulate<6>(params, true) : accumulate<3>(params, true);
}

Eigen::VectorXd gradient(const BindingObjective& f, const Eigen::VectorXd& params) {
  BindingObjective::Evaluation ev = f.evaluate(params);
  require_finite(ev.value, "objective");
  return ev.gradient;
}

namespace {

FitReport run_fit(const BindingObjective& f, Scheme scheme, int rounds,
                  const FitOptions& opts) {
  FitReport report;
  report.scheme = scheme;
  report.rounds = rounds;
  report.residual = opts.residual;

  Eigen::VectorXd x = f.initial_params(opts.initial_g);
  if (opts.initial_class_g.size() > 0) {
    if (opts.initial_class_g.size() != f.num_classes()) {
      throw DataError("initial g needs one value per class");
    }
    for (int c = 0; c < f.num_classes(); ++c) {
      const double g = opts.initial_class_g[c];
      if (!(g > 0 && g < 1)) throw DataError("initial g must lie in (0, 1)");
      x[c] = logit(g);
    }
  }
  BindingObjective::Evaluation ev = f.evaluate(x);
  require_finite(ev.value, "objective at the initial point");
  report.objective_trace.push_back(ev.value);

  // Each line search starts from twice the last accepted step, beginning
  // at opts.initial_step.
  double step = opts.initial_step;
  for (int it = 0; it < opts.max_iterations; ++it) {
    const double slope = ev.gradient.squaredNorm();
    if (slope == 0) {
      report.converged = true;
      break;
    }
    double trial = std::min(step, opts.max_step / ev.gradient.lpNorm<Eigen::Infinity>());
    Eigen::VectorXd next;
    double next_value = 0;
    bool accepted = false;
    while (trial > 1e-16) {
      next = x - trial * ev.gradient;
      next_value = f.value(next);
      if (std::isfinite(next_value) && next_value <= ev.value - 1e-4 * trial * slope) {
        accepted = true;
        break;
      }
      trial *= opts.shrink;
    }
    report.iterations = it + 1;
    if (!accepted) {
      report.converged = true;
      break;
    }
    const double change = ev.value - next_value;
    x = next;
    ev = f.evaluate(x);
    require_finite(ev.value, "objective");
    report.objective_trace.push_back(ev.value);
    step = 2 * trial;
    if (change < opts.tolerance) {
      report.converged = true;
      break;
    }
  }

  report.g = f.node_sampling(x);
  if (f.joint()) report.pair_prob = f.pair_probs(x);
  report.achieved = ev.counts;
  report.achieved_edges = ev.edges;
  if (!report.converged) report.warnings.push_back("iteration cap reached before convergence");
  return report;
}

}  // namespace

FitReport fit_binding(const EdgeProbModel& m, Scheme scheme, int rounds, const FitObjective& obj,
                      const FitOptions& opts) {
  const BindingObjective f(m, scheme, rounds, obj, false, 0, opts.residual);
  FitReport report = run_fit(f, scheme, rounds, opts);

  BindingParams full;
  full.scheme = scheme;
  full.rounds = rounds;
  full.residual = opts.residual;
  full.g = Eigen::VectorXd::Ones(f.num_classes());
  const ExpectedCounts ceiling = expected_counts(m, full);
  if (ceiling.triangles < obj.triangles) {
    report.warnings.push_back("triangle target " + std::to_string(obj.triangles) +
                              " exceeds the maximum " + std::to_string(ceiling.triangles) +
                              " reachable at g = 1");
  }
  return report;
}

FitReport fit_binding_joint(const EdgeProbModel& m, Scheme scheme, int rounds,
                            const FitObjective& obj, const FitOptions& opts) {
  if (obj.kind != ObjectiveKind::kTrianglesAndWedges) {
    throw DataError("joint fitting needs triangle and wedge targets");
  }
  const BindingObjective f(m, scheme, rounds, obj, true, opts.edge_penalty, opts.residual);
  FitReport report = run_fit(f, scheme, rounds, opts);
  if (opts.edge_penalty <= 0) {
    report.warnings.push_back("edge penalty is 0; the expected edge count may drift");
  }
  return report;
}

EdgeProbModel adjusted_model(const EdgeProbModel& m, const FitReport& r) {
  if (!r.pair_prob) return m;
  const ClassStructure cs = class_structure(m);
  return make_sb(cs.class_of, *r.pair_prob);
}

}  // namespace epgm
