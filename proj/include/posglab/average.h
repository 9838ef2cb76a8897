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

#ifndef POSGLAB_AVERAGE_H_
#define POSGLAB_AVERAGE_H_

#include <iosfwd>
#include <span>
#include <vector>

#include "posglab/filter.h"
#include "posglab/shapley.h"

namespace posglab {

// Discount factors 1 - 2^-k for k = 1..7.
std::vector<double> DefaultAlphaSchedule();

struct AlphaDiagnostics {
  double alpha = 0.0;
  double value_at_ref = 0.0;  // V_alpha(psi*)
  double gamma = 0.0;         // (1 - alpha) V_alpha(psi*)
  double sup_relative = 0.0;  // sup |V_alpha - V_alpha(psi*)|
  double max_abs_residual = 0.0;
  double mean_abs_residual = 0.0;
  int iterations = 0;
  double vi_residual = 0.0;
  double wall_seconds = 0.0;
};

// Vanishing-discount estimate of the average value: for each alpha in the
// schedule, the discounted fixed point V_alpha, gamma_alpha = (1 - alpha)
// V_alpha(psi*), and the relative table V_alpha - V_alpha(psi*). The
// estimate is gamma at the largest alpha; successive differences are
// reported rather than extrapolated.
struct VanishingDiscountRun {
  std::vector<double> alphas;
  Belief psi_star;             // the grid point used as reference
  std::size_t ref_index = 0;
  std::vector<double> gammas;
  std::vector<ValueTable> tables;
  std::vector<ValueTable> relative_tables;
  std::vector<double> successive_differences;  // |gamma_{k+1} - gamma_k|
  double gamma_estimate = 0.0;
  std::vector<AlphaDiagnostics> diagnostics;
};

class VanishingDiscountNotConverged : public NotConverged {
 public:
  VanishingDiscountNotConverged(const NotConverged& cause, VanishingDiscountRun partial_run)
      : NotConverged(cause), partial_run_(std::move(partial_run)) {}
  // Results for every alpha that did converge.
  const VanishingDiscountRun& partial_run() const { return partial_run_; }

 private:
  VanishingDiscountRun partial_run_;
};

// `alphas` must be strictly increasing in (0, 1). psi_star is projected onto
// the grid.
VanishingDiscountRun RunVanishingDiscount(const GridDynamics& dynamics,
                                          std::span<const double> alphas, const Belief& psi_star,
                                          const ValueIterationOptions& options = {});

struct AcoeResiduals {
  std::vector<double> r;
  double max_abs = 0.0;
  double mean_abs = 0.0;
};

// Residual of the average-payoff optimality equation for the relative table
// at schedule position k:
//   r(psi) = val[c~(psi, ., .) + sum_y P(y) Vbar(psi'_y)] - Vbar(psi) - gamma.
// A diagnostic of how far the finite-alpha surrogate is from satisfying the
// limiting inequalities; it vanishes as the relative values converge.
AcoeResiduals ComputeAcoeResiduals(const GridDynamics& dynamics, const VanishingDiscountRun& run,
                                   std::size_t k, int threads = 1);

// CSV, one row per alpha. The wall-time column is omitted when
// include_timing is false so that output is reproducible byte for byte.
void WriteResultsTable(std::ostream& os, const VanishingDiscountRun& run, bool include_timing);

}  // namespace posglab

#endif  // POSGLAB_AVERAGE_H_
