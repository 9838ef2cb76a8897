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

#include "posglab/rollout.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "posglab/filter.h"
#include "posglab/parallel.h"
#include "posglab/rng.h"
#include "posglab/stats.h"

namespace posglab {
namespace {

struct EpisodeTotals {
  double hidden = 0.0;
  double belief = 0.0;
  double first_half = 0.0;
  double second_half = 0.0;
};

EpisodeTotals RunEpisode(const GameModel& model, const Strategy& s1, const Strategy& s2,
                         std::int64_t horizon, Rng& rng) {
  const Dims& d = model.dims;
  const std::span<const double> joint_all(model.kernel);
  std::vector<double> psi = model.initial_belief;
  std::vector<double> next(d.nx);
  int x = rng.Categorical(psi);
  const std::int64_t half = horizon / 2;
  EpisodeTotals t;
  for (std::int64_t k = 0; k < horizon; ++k) {
    const int u = rng.Categorical(s1.Act(model, psi).probs);
    const int v = rng.Categorical(s2.Act(model, psi).probs);
    const double c = model.c(x, u, v);
    t.hidden += c;
    t.belief += StageCost(model, psi, u, v);
    (k < half ? t.first_half : t.second_half) += c;
    // Joint draw of (X_{k+1}, Y_{k+1}) from the row p(., . | x, u, v).
    const int zy = rng.Categorical(
        joint_all.subspan(model.KernelIndex(x, u, v, 0, 0), static_cast<std::size_t>(d.nx) * d.ny));
    const int y = zy % d.ny;
    x = zy / d.ny;
    const double denom = FilterUpdateUnnormalized(model, psi, u, v, y, next);
    if (!(denom > Belief::kUnderflowGuard)) {
      throw ZeroProbabilityObservation("simulated observation has zero predictive probability");
    }
    for (int z = 0; z < d.nx; ++z) psi[z] = next[z] / denom;
  }
  return t;
}

}  // namespace

RolloutResult Simulate(const GameModel& model, const Strategy& s1, const Strategy& s2,
                       const RolloutOptions& options) {
  if (options.horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  if (options.episodes < 1) throw std::invalid_argument("episodes must be at least 1");
  if (s1.side() != Side::kRow) throw std::invalid_argument("s1 must be a player-1 strategy");
  if (s2.side() != Side::kCol) throw std::invalid_argument("s2 must be a player-2 strategy");
  if (s1.num_actions() != model.dims.nu || s2.num_actions() != model.dims.nv) {
    throw std::invalid_argument("strategy action count does not match the model");
  }
  std::vector<EpisodeTotals> totals(options.episodes);
  ParallelFor(options.episodes, options.threads, [&](std::size_t e) {
    Rng rng = Rng::ForPath(options.seed, e);
    totals[e] = RunEpisode(model, s1, s2, options.horizon, rng);
  });

  RolloutResult r;
  r.episodes = options.episodes;
  r.horizon = options.horizon;
  const double h = static_cast<double>(options.horizon);
  const std::int64_t half = options.horizon / 2;
  std::vector<double> first, second;
  for (const EpisodeTotals& t : totals) {
    r.per_episode_averages.push_back(t.hidden / h);
    r.per_episode_belief_averages.push_back(t.belief / h);
    if (half > 0) first.push_back(t.first_half / static_cast<double>(half));
    second.push_back(t.second_half / static_cast<double>(options.horizon - half));
  }
  const SampleSummary hidden = Summarize(r.per_episode_averages);
  const SampleSummary belief = Summarize(r.per_episode_belief_averages);
  r.mean_avg_payoff = hidden.mean;
  r.std_error = hidden.std_error;
  r.belief_mean_avg_payoff = belief.mean;
  r.belief_std_error = belief.std_error;
  r.first_half_mean = first.empty() ? 0.0 : Summarize(first).mean;
  r.second_half_mean = Summarize(second).mean;
  return r;
}

PayoffEquivalenceReport PayoffEquivalenceTest(const GameModel& model, const Strategy& s1,
                                              const Strategy& s2, const RolloutOptions& options) {
  PayoffEquivalenceReport p;
  p.rollout = Simulate(model, s1, s2, options);
  p.hidden_mean = p.rollout.mean_avg_payoff;
  p.belief_mean = p.rollout.belief_mean_avg_payoff;
  p.difference = p.hidden_mean - p.belief_mean;
  p.combined_std_error = std::hypot(p.rollout.std_error, p.rollout.belief_std_error);
  p.tolerance = 3.0 * p.combined_std_error;
  for (std::size_t e = 0; e < p.rollout.episodes; ++e) {
    p.max_abs_episode_difference =
        std::max(p.max_abs_episode_difference, std::abs(p.rollout.per_episode_averages[e] -
                                                        p.rollout.per_episode_belief_averages[e]));
  }
  p.pass = std::abs(p.difference) <= p.tolerance;
  return p;
}

AdversaryPool DefaultAdversaryPool(const GameModel& model,
                                   std::shared_ptr<const StrategyTable> table) {
  const Dims& d = model.dims;
  AdversaryPool pool;
  pool.player1.push_back(Strategy::UniformRandom(Side::kRow, d.nu));
  for (int u = 0; u < d.nu; ++u) {
    pool.player1.push_back(Strategy::FixedMixed(Side::kRow, MixedAction::PointMass(d.nu, u)));
  }
  pool.player1.push_back(Strategy::MyopicGreedy(Side::kRow, table));
  pool.player2.push_back(Strategy::UniformRandom(Side::kCol, d.nv));
  for (int v = 0; v < d.nv; ++v) {
    pool.player2.push_back(Strategy::FixedMixed(Side::kCol, MixedAction::PointMass(d.nv, v)));
  }
  pool.player2.push_back(Strategy::MyopicGreedy(Side::kCol, table));
  return pool;
}

bool SaddleReport::pass() const {
  return std::all_of(comparisons.begin(), comparisons.end(),
                     [](const SaddleComparison& c) { return c.pass; });
}

SaddleReport SaddleTest(const GameModel& model, std::shared_ptr<const StrategyTable> table,
                        double gamma, const AdversaryPool& pool, const RolloutOptions& options,
                        double budget) {
  const Strategy opt1 = Strategy::GridTable(Side::kRow, table);
  const Strategy opt2 = Strategy::GridTable(Side::kCol, table);
  SaddleReport report;
  report.gamma = gamma;
  report.budget = budget;
  auto run = [&](const Strategy& s1, const Strategy& s2, const std::string& name,
                 const std::string& side) {
    const RolloutResult r = Simulate(model, s1, s2, options);
    SaddleComparison c;
    c.adversary = name;
    c.side = side;
    c.mean = r.mean_avg_payoff;
    c.std_error = r.std_error;
    c.slack = 3.0 * r.std_error + budget;
    if (side == "p2") {
      c.bound = gamma - c.slack;
      c.pass = c.mean >= c.bound;
    } else if (side == "p1") {
      c.bound = gamma + c.slack;
      c.pass = c.mean <= c.bound;
    } else {
      c.bound = c.slack;
      c.pass = std::abs(c.mean - gamma) <= c.slack;
    }
    report.comparisons.push_back(c);
  };
  run(opt1, opt2, "table", "none");
  for (const Strategy& a : pool.player2) run(opt1, a, a.name(), "p2");
  for (const Strategy& a : pool.player1) run(a, opt2, a.name(), "p1");
  return report;
}

void WriteSaddleReport(std::ostream& os, const SaddleReport& report) {
  const auto old = os.precision(10);
  os << "adversary,side,mean,stderr,bound,pass\n";
  for (const SaddleComparison& c : report.comparisons) {
    os << c.adversary << "," << c.side << "," << c.mean << "," << c.std_error << "," << c.bound
       << "," << (c.pass ? "pass" : "fail") << "\n";
  }
  os.precision(old);
}

}  // namespace posglab
