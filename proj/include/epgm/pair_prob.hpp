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

#include <algorithm>
#include <cmath>

#include "epgm/dual.hpp"

namespace epgm {

// Scalar-generic helpers; `using std::...` lets ADL pick the Dual overloads.

// Per-round binding probability of a pair under parallel binding:
// r = min((1 - (1 - p)^(1/R)) / (g_u g_v), 1), defined as 0 when g_u g_v = 0.
template <class T>
T round_prob(const T& p, const T& gg, int rounds) {
  using std::expm1;
  using std::log1p;
  using std::min;
  if (value_of(gg) <= 0) return T(0);
  T per_round = value_of(p) >= 1 ? T(1) : -expm1(log1p(-p) / double(rounds));
  return min(per_round / gg, T(1));
}

// Residual probability: max(1 - (1 - p) / (1 - g_u g_v)^R, 0).
template <class T>
T residual_prob(const T& p, const T& gg, int rounds) {
  using std::exp;
  using std::log1p;
  using std::max;
  if (value_of(gg) <= 0) return p;
  if (value_of(gg) >= 1) return T(0);
  T uncovered = exp(double(rounds) * log1p(-gg));
  if (value_of(uncovered) <= 0) return T(0);
  return max(T(1) - (T(1) - p) / uncovered, T(0));
}

}  // namespace epgm
