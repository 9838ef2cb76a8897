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

#include "posglab/stats.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

#include "posglab/parallel.h"

namespace posglab {

SampleSummary Summarize(std::span<const double> x) {
  SampleSummary s;
  s.n = x.size();
  if (s.n == 0) return s;
  s.mean = PairwiseSum(x) / static_cast<double>(s.n);
  if (s.n > 1) {
    std::vector<double> sq(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) sq[i] = (x[i] - s.mean) * (x[i] - s.mean);
    s.stddev = std::sqrt(PairwiseSum(sq) / static_cast<double>(s.n - 1));
    s.std_error = s.stddev / std::sqrt(static_cast<double>(s.n));
  }
  return s;
}

namespace {

// P(sqrt(n) D > lambda) in the large-n limit.
double KolmogorovTail(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

}  // namespace

TestResult KsGeometric(std::span<const std::int64_t> samples, double p, double significance) {
  if (samples.empty()) throw std::invalid_argument("KsGeometric: no samples");
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("KsGeometric: p must be in (0, 1]");
  std::vector<std::int64_t> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());

  // Both CDFs are right-continuous step functions with jumps at integers, so
  // the supremum is attained at the observed support points or between them;
  // evaluating at every integer up to the max sample covers it.
  double d = 0.0;
  std::size_t pos = 0;
  const std::int64_t top = sorted.back();
  for (std::int64_t k = 0; k <= top; ++k) {
    while (pos < sorted.size() && sorted[pos] <= k) ++pos;
    const double empirical = static_cast<double>(pos) / n;
    const double model = 1.0 - std::pow(1.0 - p, static_cast<double>(k + 1));
    d = std::max(d, std::abs(empirical - model));
  }
  // Beyond the last sample the empirical CDF is 1 and the model CDF only
  // approaches it, so the gap there is smaller than at `top`.

  TestResult r;
  r.statistic = d;
  r.critical = std::sqrt(-std::log(significance / 2.0) / 2.0) / std::sqrt(n);
  r.p_value = KolmogorovTail(std::sqrt(n) * d);
  r.pass = d <= r.critical;
  return r;
}

TestResult ChiSquareGoodnessOfFit(std::span<const std::int64_t> counts,
                                  std::span<const double> probs, double significance) {
  if (counts.size() != probs.size()) throw std::invalid_argument("ChiSquare: size mismatch");
  double n = 0.0;
  for (auto c : counts) n += static_cast<double>(c);
  TestResult r;
  int cells = 0;
  bool impossible = false;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (probs[i] <= 0.0) {
      if (counts[i] > 0) impossible = true;
      continue;
    }
    const double expected = n * probs[i];
    const double diff = static_cast<double>(counts[i]) - expected;
    r.statistic += diff * diff / expected;
    ++cells;
  }
  r.dof = std::max(1, cells - 1);
  boost::math::chi_squared dist(r.dof);
  r.critical = boost::math::quantile(boost::math::complement(dist, significance));
  r.p_value = impossible ? 0.0 : boost::math::cdf(boost::math::complement(dist, r.statistic));
  r.pass = !impossible && r.statistic <= r.critical;
  return r;
}

}  // namespace posglab
