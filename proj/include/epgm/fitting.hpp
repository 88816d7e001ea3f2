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

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "epgm/expected_counts.hpp"
#include "epgm/models.hpp"
#include "epgm/realization.hpp"

namespace epgm {

enum class ObjectiveKind { kTriangles, kTrianglesAndWedges };

struct FitObjective {
  ObjectiveKind kind = ObjectiveKind::kTriangles;
  double triangles = 0;
  double wedges = 0;
  // Expected edge count kept by the joint-mode penalty (|E| of the input).
  double edges = 0;
};

struct FitOptions {
  double initial_step = 0.1;
  double shrink = 0.5;
  int max_iterations = 2000;
  double tolerance = 1e-8;
  // Largest change of any logit in one iteration.
  double max_step = 1.0;
  // Starting g for every class, unless initial_class_g is non-empty.
  double initial_g = 0.5;
  Eigen::VectorXd initial_class_g;
  // Weight of (1 - sum p / edges)^2 in joint mode.
  double edge_penalty = 10.0;
  ResidualCoupling residual = ResidualCoupling::kShared;
};

struct FitReport {
  Scheme scheme = Scheme::kLocalBinding;
  int rounds = 0;
  ResidualCoupling residual = ResidualCoupling::kShared;
  int iterations = 0;
  std::vector<double> objective_trace;
  Eigen::VectorXd g;
  // Joint mode only: fitted class-pair probabilities (classes x classes).
  std::optional<Eigen::MatrixXd> pair_prob;
  ExpectedCounts achieved;
  double achieved_edges = 0;
  bool converged = false;
  std::vector<std::string> warnings;

  BindingParams binding() const;
};

/// The fitting loss as a function of unconstrained parameters: logits of the
/// per-class g, followed in joint mode by logits of the per-class-pair p.
///
///   L = (1 - E[tri]/tri*)^2 [+ (1 - E[wedge]/wedge*)^2]
///       [+ lambda (1 - sum p / edges*)^2]
class BindingObjective {
 public:
  BindingObjective(const EdgeProbModel& m, Scheme scheme, int rounds, FitObjective obj,
                   bool joint = false, double edge_penalty = 0,
                   ResidualCoupling residual = ResidualCoupling::kShared);

  struct Evaluation {
    double value = 0;
    Eigen::VectorXd gradient;
    ExpectedCounts counts;
    double edges = 0;
    bool at_kink = false;          // some min/max evaluated at an exact tie
    double min_kink_gap = 0;       // smallest min/max argument gap seen
  };

  int num_params() const { return num_classes_ + (joint_ ? num_pairs_ : 0); }
  int num_classes() const { return num_classes_; }
  bool joint() const { return joint_; }

  double value(const Eigen::VectorXd& params) const;
  Evaluation evaluate(const Eigen::VectorXd& params) const;

  Eigen::VectorXd initial_params(double initial_g = 0.5) const;
  Eigen::VectorXd node_sampling(const Eigen::VectorXd& params) const;
  Eigen::MatrixXd pair_probs(const Eigen::VectorXd& params) const;  // joint only

 private:
  template <int N>
  Evaluation accumulate(const Eigen::VectorXd& params, bool with_gradient) const;

  Scheme scheme_;
  int rounds_;
  ResidualCoupling residual_;
  FitObjective obj_;
  bool joint_;
  double edge_penalty_;
  int num_classes_ = 0;
  int num_pairs_ = 0;
  std::vector<TripleTerm> terms_;
  std::vector<double> pair_counts_;  // per class-pair id
  Eigen::VectorXd base_pair_prob_;   // per class-pair id
};

// Gradient of the objective; throws NumericalError on a non-finite value.
Eigen::VectorXd gradient(const BindingObjective& f, const Eigen::VectorXd& params);

FitReport fit_binding(const EdgeProbModel& m, Scheme scheme, int rounds,
                      const FitObjective& obj, const FitOptions& opts = {});

// Joint fit of g and per-class-pair p. Requires kind = kTrianglesAndWedges
// and an ER, CL, or SB model.
FitReport fit_binding_joint(const EdgeProbModel& m, Scheme scheme, int rounds,
                            const FitObjective& obj, const FitOptions& opts = {});

// The model implied by a joint fit: an SB model whose blocks are the input
// model's classes. Returns the input unchanged for non-joint reports.
EdgeProbModel adjusted_model(const EdgeProbModel& m, const FitReport& r);

}  // namespace epgm
