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

#ifndef POSGLAB_GRID_H_
#define POSGLAB_GRID_H_

#include <cstddef>
#include <span>
#include <vector>

#include "posglab/filter.h"

namespace posglab {

inline constexpr std::size_t kDefaultGridCap = 2'000'000;

// The points of the probability simplex over nx states whose coordinates are
// multiples of 1/m. Points are stored in colexicographic order of their
// stars-and-bars encoding: for integer coordinates k, the bar positions are
// b_j = k_0 + ... + k_j + j (j < nx - 1), and the index of k is
// sum_j C(b_j, j + 1). For nx = 2 this lists (0, m), (1, m - 1), ..., (m, 0).
class SimplexGrid {
 public:
  // Throws ResourceLimit if the grid would have more than `cap` points.
  static SimplexGrid Build(int nx, int m, std::size_t cap = kDefaultGridCap);

  // C(m + nx - 1, nx - 1), or SIZE_MAX on overflow.
  static std::size_t CountPoints(int nx, int m);

  int dimension() const { return nx_; }
  int resolution() const { return m_; }
  std::size_t size() const { return size_; }

  std::span<const int> coords(std::size_t i) const {
    return {coords_.data() + i * nx_, static_cast<std::size_t>(nx_)};
  }
  std::span<const double> probs(std::size_t i) const {
    return {probs_.data() + i * nx_, static_cast<std::size_t>(nx_)};
  }
  Belief point(std::size_t i) const;

  // Exact position of an integer coordinate vector (must sum to m).
  std::size_t IndexOf(std::span<const int> coords) const;

  std::size_t VertexIndex(int x) const;

  // Index of an L1-nearest grid point; ties go to the smallest index.
  std::size_t Project(std::span<const double> psi) const;
  std::size_t Project(const Belief& psi) const { return Project(psi.probs()); }

 private:
  SimplexGrid(int nx, int m) : nx_(nx), m_(m) {}
  std::size_t Binom(int n, int k) const { return binom_[static_cast<std::size_t>(n) * nx_ + k]; }

  int nx_ = 0;
  int m_ = 0;
  std::size_t size_ = 0;
  std::vector<int> coords_;
  std::vector<double> probs_;
  std::vector<std::size_t> binom_;  // C(n, k) for n <= m + nx - 1, k < nx
};

double L1Distance(std::span<const double> a, std::span<const double> b);

}  // namespace posglab

#endif  // POSGLAB_GRID_H_
