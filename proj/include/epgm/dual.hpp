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

#include <cmath>
#include <limits>

#include <Eigen/Core>

namespace epgm {

/// Records min/max comparisons whose two arguments carry different
/// derivatives, i.e. the kinks of the closed forms. A gradient evaluated with
/// `tie` set is a subgradient; `min_gap` is the smallest argument gap seen.
struct KinkMonitor {
  bool tie = false;
  double min_gap = std::numeric_limits<double>::infinity();

  void reset() { *this = KinkMonitor{}; }
  static KinkMonitor& local() {
    thread_local KinkMonitor monitor;
    return monitor;
  }
};

/// Forward-mode dual number with N tangent directions.
template <int N>
struct Dual {
  using Tangent = Eigen::Matrix<double, N, 1>;

  double v = 0;
  Tangent d = Tangent::Zero();

  Dual() = default;
  Dual(double value) : v(value) {}  // NOLINT: constants promote implicitly
  Dual(double value, const Tangent& tangent) : v(value), d(tangent) {}

  static Dual variable(double value, int slot) {
    Dual x(value);
    x.d[slot] = 1;
    return x;
  }

  Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
  Dual& operator*=(const Dual& o) { d = d * o.v + o.d * v; v *= o.v; return *this; }
  Dual& operator/=(const Dual& o) {
    d = (d * o.v - o.d * v) / (o.v * o.v);
    v /= o.v;
    return *this;
  }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
  friend Dual operator-(const Dual& a) { return Dual(-a.v, -a.d); }

  friend bool operator<(const Dual& a, const Dual& b) { return a.v < b.v; }
  friend bool operator>(const Dual& a, const Dual& b) { return a.v > b.v; }
  friend bool operator<=(const Dual& a, const Dual& b) { return a.v <= b.v; }
  friend bool operator>=(const Dual& a, const Dual& b) { return a.v >= b.v; }
};

template <int N>
Dual<N> chain(const Dual<N>& x, double value, double slope) {
  if (x.d.isZero()) return Dual<N>(value);
  return Dual<N>(value, x.d * slope);
}

template <int N>
Dual<N> exp(const Dual<N>& x) {
  double e = std::exp(x.v);
  return chain(x, e, e);
}
template <int N>
Dual<N> log(const Dual<N>& x) {
  return chain(x, std::log(x.v), 1.0 / x.v);
}
template <int N>
Dual<N> log1p(const Dual<N>& x) {
  return chain(x, std::log1p(x.v), 1.0 / (1.0 + x.v));
}
template <int N>
Dual<N> expm1(const Dual<N>& x) {
  return chain(x, std::expm1(x.v), std::exp(x.v));
}
template <int N>
Dual<N> sqrt(const Dual<N>& x) {
  double s = std::sqrt(x.v);
  return chain(x, s, 0.5 / s);
}

namespace detail {
template <int N>
void note_kink(const Dual<N>& a, const Dual<N>& b) {
  if (a.d == b.d) return;
  auto& m = KinkMonitor::local();
  double gap = std::abs(a.v - b.v);
  if (gap == 0) m.tie = true;
  if (gap < m.min_gap) m.min_gap = gap;
}
}  // namespace detail

// At exact ties the first argument is returned.
template <int N>
Dual<N> min(const Dual<N>& a, const Dual<N>& b) {
  detail::note_kink(a, b);
  return b.v < a.v ? b : a;
}
template <int N>
Dual<N> max(const Dual<N>& a, const Dual<N>& b) {
  detail::note_kink(a, b);
  return b.v > a.v ? b : a;
}

inline double value_of(double x) { return x; }
template <int N>
double value_of(const Dual<N>& x) {
  return x.v;
}

}  // namespace epgm
