// Copyright 2026 The posglab Authors.
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

#include "posglab/grid.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "posglab/errors.h"

namespace posglab {

std::size_t SimplexGrid::CountPoints(int nx, int m) {
  // C(m + nx - 1, nx - 1) by the multiplicative formula with overflow checks.
  const std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t result = 1;
  for (int i = 1; i < nx; ++i) {
    const std::size_t num = static_cast<std::size_t>(m) + i;
    if (result > kMax / num) return kMax;
    result = result * num / i;
  }
  return result;
}

SimplexGrid SimplexGrid::Build(int nx, int m, std::size_t cap) {
  if (nx < 1 || m < 1) throw std::invalid_argument("SimplexGrid: nx and m must be positive");
  const std::size_t count = CountPoints(nx, m);
  if (count > cap) {
    throw ResourceLimit("simplex grid with nx=" + std::to_string(nx) + ", m=" + std::to_string(m) +
                        " exceeds the cap of " + std::to_string(cap) + " points");
  }
  SimplexGrid g(nx, m);
  g.size_ = count;

  const int top = m + nx - 1;
  g.binom_.assign(static_cast<std::size_t>(top + 1) * nx, 0);
  for (int n = 0; n <= top; ++n) {
    g.binom_[static_cast<std::size_t>(n) * nx] = 1;
    for (int k = 1; k < nx && n > 0; ++k) {
      g.binom_[static_cast<std::size_t>(n) * nx + k] = g.Binom(n - 1, k - 1) + g.Binom(n - 1, k);
    }
  }

  g.coords_.assign(count * nx, 0);
  g.probs_.assign(count * nx, 0.0);
  // Walk all compositions of m into nx parts and store each at its rank.
  std::vector<int> k(nx, 0);
  auto visit = [&](auto& self, int pos, int left) -> void {
    if (pos == nx - 1) {
      k[pos] = left;
      const std::size_t idx = g.IndexOf(k);
      std::copy(k.begin(), k.end(), g.coords_.begin() + static_cast<std::ptrdiff_t>(idx * nx));
      for (int x = 0; x < nx; ++x) g.probs_[idx * nx + x] = static_cast<double>(k[x]) / m;
      return;
    }
    for (int a = 0; a <= left; ++a) {
      k[pos] = a;
      self(self, pos + 1, left - a);
    }
  };
  visit(visit, 0, m);
  return g;
}

std::size_t SimplexGrid::IndexOf(std::span<const int> k) const {
  if (static_cast<int>(k.size()) != nx_) throw std::invalid_argument("IndexOf: wrong dimension");
  std::size_t rank = 0;
  int partial = 0;
  for (int j = 0; j + 1 < nx_; ++j) {
    partial += k[j];
    rank += Binom(partial + j, j + 1);
  }
  return rank;
}

Belief SimplexGrid::point(std::size_t i) const {
  auto p = probs(i);
  return Belief(std::vector<double>(p.begin(), p.end()));
}

std::size_t SimplexGrid::VertexIndex(int x) const {
  std::vector<int> k(nx_, 0);
  k.at(x) = m_;
  return IndexOf(k);
}

std::size_t SimplexGrid::Project(std::span<const double> psi) const {
  // Largest-remainder rounding of m * psi. Every L1 minimizer floors each
  // coordinate and rounds up the r coordinates with the largest fractional
  // parts; among equal fractional parts, rounding up a later coordinate gives
  // the smaller colex index.
  thread_local std::vector<int> k;
  thread_local std::vector<double> frac;
  thread_local std::vector<int> order;
  k.assign(nx_, 0);
  frac.assign(nx_, 0.0);
  order.resize(nx_);

  double total = 0.0;
  for (int x = 0; x < nx_; ++x) total += psi[x];
  if (!(total > 0.0)) throw std::invalid_argument("Project: belief has no mass");

  int assigned = 0;
  for (int x = 0; x < nx_; ++x) {
    const double s = psi[x] / total * m_;
    const double f = std::floor(s);
    k[x] = static_cast<int>(f);
    frac[x] = s - f;
    assigned += k[x];
  }
  int remaining = std::clamp(m_ - assigned, 0, nx_);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [](int a, int b) {
    if (std::abs(frac[a] - frac[b]) > 1e-12) return frac[a] > frac[b];
    return a > b;
  });
  for (int i = 0; i < remaining; ++i) ++k[order[i]];

  // Guard against rounding leaving the sum off by one.
  int sum = std::accumulate(k.begin(), k.end(), 0);
  while (sum > m_) {
    for (int i = nx_ - 1; i >= 0 && sum > m_; --i) {
      const int x = order[i];
      if (k[x] > 0) {
        --k[x];
        --sum;
      }
    }
  }
  return IndexOf(k);
}

double L1Distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

}  // namespace posglab
