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
#include <span>
#include <vector>

#include "epgm/models.hpp"
#include "epgm/realization.hpp"

namespace epgm {

struct ExpectedCounts {
  double triangles = 0;
  double wedges = 0;
};

/// One equivalence class of node triples: `weight` unordered node triples
/// whose nodes fall in classes `cls` and whose pairs have probabilities `p`
/// (pair order e12, e13, e23). `pair_class` is the class-pair id of each
/// pair for ER/CL/SB and -1 for KR.
struct TripleTerm {
  double weight = 0;
  std::array<int, 3> cls{};
  std::array<int, 3> pair_class{-1, -1, -1};
  std::array<double, 3> p{};
};

// Index of the unordered class pair (a, b) among the c(c+1)/2 pairs.
inline int class_pair_id(int a, int b, int num_classes) {
  if (a > b) std::swap(a, b);
  return a * num_classes - a * (a - 1) / 2 + (b - a);
}

// Class triples for ER (one term), CL/SB (unordered class triples) and KR
// (joint bit-pattern compositions of an ordered triple, weight / 6). Terms
// come out in a fixed order so sums are reproducible.
std::vector<TripleTerm> class_triples(const EdgeProbModel& m);

// Number of node pairs between classes a and b (a == b: within class).
double class_pair_count(const ClassStructure& cs, int a, int b);

ExpectedCounts expected_counts(const EdgeProbModel& m, const BindingParams& b);
ExpectedCounts expected_counts(std::span<const TripleTerm> terms, const BindingParams& b);

// Sum of p over all pairs.
double expected_edges(const EdgeProbModel& m);

// sum p^2 / sum p over all pairs; NumericalError when every p is zero.
double analytic_overlap(const EdgeProbModel& m);

}  // namespace epgm
