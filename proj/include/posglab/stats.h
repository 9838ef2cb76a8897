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

#ifndef POSGLAB_STATS_H_
#define POSGLAB_STATS_H_

#include <cstdint>
#include <span>
#include <vector>

namespace posglab {

struct SampleSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n - 1)
  double std_error = 0.0;

  double CiHalfwidth95() const { return 1.959963984540054 * std_error; }
};

// Order-deterministic summary; sums use pairwise summation.
SampleSummary Summarize(std::span<const double> x);

struct TestResult {
  double statistic = 0.0;
  double critical = 0.0;
  double p_value = 1.0;
  int dof = 0;
  bool pass = false;
};

// One-sample Kolmogorov-Smirnov test of nonnegative integer samples t against
// P(t <= k) = 1 - (1 - p)^(k + 1), i.e. t + 1 ~ Geometric(p) on {1, 2, ...}.
// Uses the asymptotic critical value sqrt(-ln(significance / 2) / 2) / sqrt(n),
// which is conservative for discrete laws.
TestResult KsGeometric(std::span<const std::int64_t> samples, double p, double significance);

// Pearson chi-square goodness of fit. Cells with zero expected probability
// must have zero counts (otherwise the test fails outright) and do not count
// towards the degrees of freedom.
TestResult ChiSquareGoodnessOfFit(std::span<const std::int64_t> counts,
                                  std::span<const double> probs, double significance);

}  // namespace posglab

#endif  // POSGLAB_STATS_H_
