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

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.h"
#include "posglab/errors.h"
#include "posglab/matgame.h"

namespace posglab {
namespace {

MatrixGame RandomGame(std::mt19937_64& gen, int max_dim = 6) {
  std::uniform_int_distribution<int> dim(1, max_dim);
  std::uniform_real_distribution<double> entry(-5.0, 5.0);
  const int r = dim(gen), c = dim(gen);
  MatrixGame a = MatrixGame::Zeros(r, c);
  for (int u = 0; u < r; ++u) {
    for (int v = 0; v < c; ++v) a(u, v) = entry(gen);
  }
  return a;
}

void CheckCertified(const MatrixGame& a, const GameSolution& s, double tol) {
  CHECK(s.row.IsValid());
  CHECK(s.col.IsValid());
  CHECK(s.row.size() == a.rows());
  CHECK(s.col.size() == a.cols());
  CHECK(std::abs(BestResponseValue(a, s.row, Side::kCol).value - s.value) <= tol);
  CHECK(std::abs(BestResponseValue(a, s.col, Side::kRow).value - s.value) <= tol);
}

TEST_CASE("matching pennies") {
  const MatrixGame a{{1, -1}, {-1, 1}};
  const GameSolution s = Solve(a);
  CHECK(std::abs(s.value) <= 1e-12);
  CHECK(s.row[0] == doctest::Approx(0.5));
  CHECK(s.col[0] == doctest::Approx(0.5));
  CheckCertified(a, s, 1e-12);
}

TEST_CASE("the separable stage game has value 1.5") {
  const MatrixGame a{{3, 1}, {0, 2}};
  const GameSolution s = Solve(a);
  CHECK(s.value == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(s.row[0] == doctest::Approx(0.5));
  CHECK(s.col[0] == doctest::Approx(0.25));
  CHECK(s.col[1] == doctest::Approx(0.75));
}

TEST_CASE("pure saddle, constant and degenerate shapes") {
  const MatrixGame saddle{{4, 5}, {2, 1}};
  const GameSolution s = Solve(saddle);
  CHECK(s.value == doctest::Approx(4.0));
  CHECK(s.row == MixedAction::PointMass(2, 0));
  CHECK(s.col == MixedAction::PointMass(2, 0));

  const MatrixGame one{{-2.5}};
  CHECK(Solve(one).value == -2.5);

  const MatrixGame constant{{7, 7, 7}, {7, 7, 7}};
  const GameSolution c = Solve(constant);
  CHECK(c.value == doctest::Approx(7.0));
  CheckCertified(constant, c, 1e-12);

  const MatrixGame row_vec{{3, -1, 2}};
  CHECK(Solve(row_vec).value == doctest::Approx(-1.0));
  const MatrixGame col_vec{{3}, {-1}, {2}};
  CHECK(Solve(col_vec).value == doctest::Approx(3.0));
}

TEST_CASE("property: saddle certificate and transpose duality on random games") {
  std::mt19937_64 gen(20260101);
  for (int trial = 0; trial < 500; ++trial) {
    const MatrixGame a = RandomGame(gen);
    const GameSolution s = Solve(a);
    CheckCertified(a, s, 1e-8);
    CHECK(std::abs(Solve(a.NegatedTranspose()).value + s.value) <= 1e-8);
  }
}

TEST_CASE("property: value agrees with a grid search for two-row games") {
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<int> cols(1, 6);
  std::uniform_real_distribution<double> entry(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    MatrixGame a = MatrixGame::Zeros(2, cols(gen));
    for (int u = 0; u < 2; ++u) {
      for (int v = 0; v < a.cols(); ++v) a(u, v) = entry(gen);
    }
    CHECK(std::abs(Solve(a).value - oracle::TwoRowGridSearch(a, 20000)) <= 6.0 / 20000 + 1e-9);
  }
}

TEST_CASE("property: affine invariance of value and strategies") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    const MatrixGame a = RandomGame(gen);
    MatrixGame b = a;
    const double k = 3.25, scale = 2.0;
    for (int u = 0; u < a.rows(); ++u) {
      for (int v = 0; v < a.cols(); ++v) b(u, v) = scale * a(u, v) + k;
    }
    const GameSolution sa = Solve(a), sb = Solve(b);
    CHECK(sb.value == doctest::Approx(scale * sa.value + k).epsilon(1e-10));
    CheckCertified(b, sb, 1e-8);
  }
}

TEST_CASE("solving is deterministic") {
  std::mt19937_64 gen(1);
  for (int trial = 0; trial < 20; ++trial) {
    const MatrixGame a = RandomGame(gen);
    const GameSolution s1 = Solve(a), s2 = Solve(a);
    CHECK(s1.value == s2.value);
    CHECK(s1.row == s2.row);
    CHECK(s1.col == s2.col);
  }
}

TEST_CASE("non-finite entries are rejected") {
  MatrixGame a{{1, 2}, {3, 4}};
  a(1, 1) = std::nan("");
  CHECK_THROWS_AS(Solve(a), NumericalFailure);
}

TEST_CASE("best responses break ties toward the lowest index") {
  const MatrixGame a{{1, 1}, {1, 1}};
  const BestResponse br = BestResponseValue(a, MixedAction::Uniform(2), Side::kCol);
  CHECK(br.index == 0);
  CHECK(br.value == 1.0);
  const MatrixGame b{{0, 2}, {1, 1}};
  CHECK(BestResponseValue(b, MixedAction::PointMass(2, 1), Side::kRow).index == 0);
  CHECK(Payoff(b, MixedAction::Uniform(2), MixedAction::Uniform(2)) == doctest::Approx(1.0));
}

}  // namespace
}  // namespace posglab
