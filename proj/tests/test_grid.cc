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

#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "oracles.h"
#include "posglab/errors.h"
#include "posglab/grid.h"

namespace posglab {
namespace {

TEST_CASE("point counts") {
  CHECK(SimplexGrid::CountPoints(2, 32) == 33);
  CHECK(SimplexGrid::CountPoints(3, 2) == 6);
  CHECK(SimplexGrid::CountPoints(4, 10) == 286);
  CHECK(SimplexGrid::CountPoints(1, 7) == 1);
  CHECK(SimplexGrid::Build(3, 16).size() == 153);
}

TEST_CASE("two-state order runs from the second vertex to the first") {
  const SimplexGrid g = SimplexGrid::Build(2, 4);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(g.coords(i)[0] == static_cast<int>(i));
    CHECK(g.coords(i)[1] == 4 - static_cast<int>(i));
    CHECK(g.probs(i)[0] == doctest::Approx(i / 4.0));
  }
  CHECK(g.VertexIndex(1) == 0);
  CHECK(g.VertexIndex(0) == 4);
}

TEST_CASE("every point is distinct, on the simplex, and indexed at its position") {
  for (int nx : {1, 2, 3, 4}) {
    for (int m : {1, 2, 5, 8}) {
      const SimplexGrid g = SimplexGrid::Build(nx, m);
      std::set<std::vector<int>> seen;
      for (std::size_t i = 0; i < g.size(); ++i) {
        std::vector<int> k(g.coords(i).begin(), g.coords(i).end());
        int total = 0;
        for (int c : k) {
          CHECK(c >= 0);
          total += c;
        }
        CHECK(total == m);
        CHECK(g.IndexOf(k) == i);
        seen.insert(k);
      }
      CHECK(seen.size() == g.size());
      for (int x = 0; x < nx; ++x) {
        CHECK(g.probs(g.VertexIndex(x))[x] == 1.0);
      }
    }
  }
}

TEST_CASE("property: projection equals exhaustive L1 search") {
  std::mt19937_64 gen(17);
  for (int nx : {2, 3, 4}) {
    for (int m : {1, 3, 8, 16}) {
      const SimplexGrid g = SimplexGrid::Build(nx, m);
      for (int trial = 0; trial < 200; ++trial) {
        const auto psi = oracle::RandomSimplexPoint(nx, gen);
        const std::size_t got = g.Project(psi);
        const std::size_t want = oracle::ExhaustiveProjection(g, psi);
        CHECK(oracle::ProjectionDistance(g, psi, got) ==
              doctest::Approx(oracle::ProjectionDistance(g, psi, want)).epsilon(1e-12));
        CHECK(got == want);
      }
    }
  }
}

TEST_CASE("grid points project to themselves") {
  const SimplexGrid g = SimplexGrid::Build(3, 7);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(g.Project(g.probs(i)) == i);
}

TEST_CASE("ties go to the smallest index") {
  const SimplexGrid g = SimplexGrid::Build(2, 1);
  const std::vector<double> mid{0.5, 0.5};
  CHECK(g.Project(mid) == 0);
  CHECK(oracle::ExhaustiveProjection(g, mid) == 0);
  const SimplexGrid g3 = SimplexGrid::Build(3, 1);
  const std::vector<double> center{1.0 / 3, 1.0 / 3, 1.0 / 3};
  CHECK(g3.Project(center) == oracle::ExhaustiveProjection(g3, center));
}

TEST_CASE("projection error is at most nx / m in L1") {
  std::mt19937_64 gen(2);
  const SimplexGrid g = SimplexGrid::Build(3, 10);
  for (int trial = 0; trial < 500; ++trial) {
    const auto psi = oracle::RandomSimplexPoint(3, gen);
    CHECK(L1Distance(psi, g.probs(g.Project(psi))) <= 3.0 / 10 + 1e-12);
  }
}

TEST_CASE("oversized grids are refused") {
  CHECK_THROWS_AS(SimplexGrid::Build(10, 100), ResourceLimit);
  CHECK_THROWS_AS(SimplexGrid::Build(3, 100, 100), ResourceLimit);
  CHECK_THROWS_AS(SimplexGrid::Build(0, 4), std::invalid_argument);
}

}  // namespace
}  // namespace posglab
