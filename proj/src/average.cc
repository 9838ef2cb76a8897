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

#include "posglab/average.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "posglab/matgame.h"
#include "posglab/parallel.h"

namespace posglab {

std::vector<double> DefaultAlphaSchedule() {
  std::vector<double> alphas;
  for (int k = 1; k <= 7; ++k) alphas.push_back(1.0 - std::ldexp(1.0, -k));
  return alphas;
}

AcoeResiduals ComputeAcoeResiduals(const GridDynamics& dynamics, const VanishingDiscountRun& run,
                                   std::size_t k, int threads) {
  if (k >= run.relative_tables.size()) throw std::out_of_range("schedule index out of range");
  const std::vector<double>& rel = run.relative_tables[k].values;
  const double gamma = run.gammas[k];
  AcoeResiduals out;
  out.r.resize(dynamics.size());
  ParallelFor(dynamics.size(), threads, [&](std::size_t i) {
    out.r[i] = Solve(dynamics.StageMatrix(i, rel, 1.0)).value - rel[i] - gamma;
  });
  std::vector<double> abs_r(out.r.size());
  for (std::size_t i = 0; i < out.r.size(); ++i) {
    abs_r[i] = std::abs(out.r[i]);
    out.max_abs = std::max(out.max_abs, abs_r[i]);
  }
  out.mean_abs = abs_r.empty() ? 0.0 : PairwiseSum(abs_r) / static_cast<double>(abs_r.size());
  return out;
}

VanishingDiscountRun RunVanishingDiscount(const GridDynamics& dynamics,
                                          std::span<const double> alphas, const Belief& psi_star,
                                          const ValueIterationOptions& options) {
  if (alphas.empty()) throw std::invalid_argument("empty discount schedule");
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    if (!(alphas[k] > 0.0 && alphas[k] < 1.0)) {
      throw std::invalid_argument("discount factors must lie in (0, 1)");
    }
    if (k > 0 && !(alphas[k] > alphas[k - 1])) {
      throw std::invalid_argument("discount schedule must be strictly increasing");
    }
  }
  if (psi_star.size() != dynamics.grid()->dimension()) {
    throw std::invalid_argument("reference belief has wrong dimension");
  }

  VanishingDiscountRun run;
  run.ref_index = dynamics.grid()->Project(psi_star);
  run.psi_star = dynamics.grid()->point(run.ref_index);

  for (double alpha : alphas) {
    const auto start = std::chrono::steady_clock::now();
    ValueIterationResult vi;
    try {
      vi = ValueIterate(dynamics, alpha, options);
    } catch (const NotConverged& e) {
      throw VanishingDiscountNotConverged(e, run);
    }
    const double ref = vi.table.values[run.ref_index];
    ValueTable rel = vi.table;
    double sup_rel = 0.0;
    for (double& v : rel.values) {
      v -= ref;
      sup_rel = std::max(sup_rel, std::abs(v));
    }

    run.alphas.push_back(alpha);
    run.gammas.push_back((1.0 - alpha) * ref);
    run.tables.push_back(std::move(vi.table));
    run.relative_tables.push_back(std::move(rel));
    const AcoeResiduals res =
        ComputeAcoeResiduals(dynamics, run, run.alphas.size() - 1, options.threads);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    run.diagnostics.push_back({alpha, ref, run.gammas.back(), sup_rel, res.max_abs, res.mean_abs,
                               vi.iterations, vi.residual, seconds});
    if (run.gammas.size() > 1) {
      run.successive_differences.push_back(
          std::abs(run.gammas.back() - run.gammas[run.gammas.size() - 2]));
    }
  }
  run.gamma_estimate = run.gammas.back();
  return run;
}

void WriteResultsTable(std::ostream& os, const VanishingDiscountRun& run, bool include_timing) {
  os.precision(17);
  os << "alpha,value_at_ref,gamma,gamma_change,sup_relative,max_abs_residual,mean_abs_residual,"
        "iterations,vi_residual";
  if (include_timing) os << ",wall_seconds";
  os << "\n";
  for (std::size_t k = 0; k < run.diagnostics.size(); ++k) {
    const AlphaDiagnostics& d = run.diagnostics[k];
    os << d.alpha << "," << d.value_at_ref << "," << d.gamma << ",";
    if (k > 0) os << run.successive_differences[k - 1];
    os << "," << d.sup_relative << "," << d.max_abs_residual << "," << d.mean_abs_residual << ","
       << d.iterations << "," << d.vi_residual;
    if (include_timing) os << "," << d.wall_seconds;
    os << "\n";
  }
}

}  // namespace posglab
