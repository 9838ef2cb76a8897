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

#include "posglab/coupling.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "posglab/grid.h"
#include "posglab/parallel.h"
#include "posglab/stats.h"

namespace posglab {
namespace {

std::vector<char> Indicator(const GameModel& model, std::vector<int>& small_set) {
  std::sort(small_set.begin(), small_set.end());
  small_set.erase(std::unique(small_set.begin(), small_set.end()), small_set.end());
  if (small_set.empty()) throw std::invalid_argument("small set K is empty");
  std::vector<char> in(model.dims.nx, 0);
  for (int x : small_set) {
    if (x < 0 || x >= model.dims.nx) {
      throw std::invalid_argument("small set state " + std::to_string(x) + " out of range");
    }
    in[x] = 1;
  }
  return in;
}

// Smallest entry of p x p - delta Theta over all pairs and actions.
void CheckResidual(const GameModel& model, const SplitChainConfig& config) {
  const Dims& d = model.dims;
  const double k = static_cast<double>(config.small_set.size());
  const double theta = 1.0 / (k * k);
  double worst = std::numeric_limits<double>::infinity();
  for (int xh : config.small_set) {
    for (int xt : config.small_set) {
      for (int u = 0; u < d.nu; ++u) {
        for (int v = 0; v < d.nv; ++v) {
          for (int zh : config.small_set) {
            for (int zt : config.small_set) {
              const double r =
                  model.PMarg(xh, u, v, zh) * model.PMarg(xt, u, v, zt) - config.delta * theta;
              worst = std::min(worst, r);
            }
          }
        }
      }
    }
  }
  if (worst < -1e-15) {
    std::ostringstream msg;
    msg << "split-chain residual is negative (" << worst << ") for delta " << config.delta;
    throw InvalidResidual(msg.str());
  }
}

// Uniform draw from K x K.
void DrawTheta(const SplitChainConfig& config, Rng& rng, int& a, int& b) {
  const int k = static_cast<int>(config.small_set.size());
  a = config.small_set[rng.UniformInt(k)];
  b = config.small_set[rng.UniformInt(k)];
}

int DrawMarginal(const GameModel& model, int x, int u, int v, Rng& rng, std::vector<double>& w) {
  const int nx = model.dims.nx;
  w.resize(nx);
  for (int z = 0; z < nx; ++z) w[z] = model.PMarg(x, u, v, z);
  return rng.Categorical(w);
}

// y ~ p(z, . | x, u, v) / p(z | x, u, v); the kernel row is contiguous in y.
int DrawObservation(const GameModel& model, int x, int u, int v, int z, Rng& rng) {
  const double* row = model.kernel.data() + model.KernelIndex(x, u, v, z, 0);
  return rng.Categorical(std::span<const double>(row, model.dims.ny));
}

}  // namespace

std::vector<int> AllStates(const GameModel& model) {
  std::vector<int> k(model.dims.nx);
  for (int x = 0; x < model.dims.nx; ++x) k[x] = x;
  return k;
}

double ComputeDelta(const GameModel& model, std::span<const int> small_set) {
  std::vector<int> k(small_set.begin(), small_set.end());
  Indicator(model, k);
  const Dims& d = model.dims;
  double eta = std::numeric_limits<double>::infinity();
  for (int x : k) {
    for (int u = 0; u < d.nu; ++u) {
      for (int v = 0; v < d.nv; ++v) {
        for (int z : k) eta = std::min(eta, model.PMarg(x, u, v, z));
      }
    }
  }
  if (!(eta > 0.0)) {
    throw NoMinorization("no minorization on K: some transition within K has probability zero");
  }
  const double scaled = eta * static_cast<double>(k.size());
  return 0.5 * scaled * scaled;
}

SplitChainConfig MakeSplitChainConfig(const GameModel& model, std::vector<int> small_set,
                                      double alpha_for_bound) {
  const double delta = ComputeDelta(model, small_set);
  return MakeSplitChainConfigWithDelta(model, std::move(small_set), delta, alpha_for_bound);
}

SplitChainConfig MakeSplitChainConfigWithDelta(const GameModel& model, std::vector<int> small_set,
                                               double delta, double alpha_for_bound) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  SplitChainConfig c;
  c.in_small_set = Indicator(model, small_set);
  c.small_set = std::move(small_set);
  c.delta = delta;
  c.alpha_for_bound = alpha_for_bound;
  CheckResidual(model, c);
  return c;
}

SplitChainState InitialSplitState(const SplitChainConfig& config, const Belief& psi_hat,
                                  const Belief& psi_tilde, Rng& rng) {
  SplitChainState s;
  s.x_hat = rng.Categorical(psi_hat.probs());
  s.x_tilde = rng.Categorical(psi_tilde.probs());
  s.level = config.InPair(s.x_hat, s.x_tilde) && rng.Bernoulli(config.delta) ? 1 : 0;
  s.psi_hat = psi_hat;
  s.psi_tilde = psi_tilde;
  return s;
}

SplitChainState StepSplitChain(const GameModel& model, const SplitChainConfig& config,
                               const SplitChainState& state, int u, int v, Rng& rng) {
  thread_local std::vector<double> w;
  const int nx = model.dims.nx;
  SplitChainState next;
  int zh = 0, zt = 0;
  if (state.level == 1) {
    DrawTheta(config, rng, zh, zt);
  } else if (config.InPair(state.x_hat, state.x_tilde)) {
    // Residual (p x p - delta Theta) / (1 - delta) over all of X x X.
    const double k = static_cast<double>(config.small_set.size());
    const double theta = config.delta / (k * k);
    w.assign(static_cast<std::size_t>(nx) * nx, 0.0);
    for (int a = 0; a < nx; ++a) {
      const double pa = model.PMarg(state.x_hat, u, v, a);
      for (int b = 0; b < nx; ++b) {
        double r = pa * model.PMarg(state.x_tilde, u, v, b);
        if (config.InPair(a, b)) r -= theta;
        w[a * nx + b] = std::max(r, 0.0);
      }
    }
    const int pair = rng.Categorical(w);
    zh = pair / nx;
    zt = pair % nx;
  } else {
    zh = DrawMarginal(model, state.x_hat, u, v, rng, w);
    zt = DrawMarginal(model, state.x_tilde, u, v, rng, w);
  }
  next.x_hat = zh;
  next.x_tilde = zt;
  next.y_hat = DrawObservation(model, state.x_hat, u, v, zh, rng);
  next.y_tilde = DrawObservation(model, state.x_tilde, u, v, zt, rng);
  next.level = config.InPair(zh, zt) && rng.Bernoulli(config.delta) ? 1 : 0;
  next.psi_hat = FilterUpdate(model, state.psi_hat, u, v, next.y_hat);
  next.psi_tilde = FilterUpdate(model, state.psi_tilde, u, v, next.y_tilde);
  return next;
}

CouplingTimeEstimate EstimateCouplingTime(const GameModel& model, const SplitChainConfig& config,
                                          const Belief& psi_hat, const Belief& psi_tilde,
                                          const Strategy& player1, const Strategy& player2,
                                          const CouplingOptions& options) {
  if (options.n_samples == 0) throw std::invalid_argument("n_samples must be positive");
  if (options.horizon_cap < 0) throw std::invalid_argument("horizon_cap must be nonnegative");
  std::vector<std::int64_t> tau(options.n_samples, -1);
  ParallelFor(options.n_samples, options.threads, [&](std::size_t path) {
    Rng rng = Rng::ForPath(options.seed, path);
    SplitChainState s = InitialSplitState(config, psi_hat, psi_tilde, rng);
    std::int64_t t = 0;
    while (s.level != 1) {
      if (t >= options.horizon_cap) return;
      const int u = rng.Categorical(player1.Act(model, s.psi_hat.probs()).probs);
      const int v = rng.Categorical(player2.Act(model, s.psi_tilde.probs()).probs);
      s = StepSplitChain(model, config, s, u, v, rng);
      ++t;
    }
    tau[path] = t;
  });

  CouplingTimeEstimate e;
  e.n_samples = options.n_samples;
  std::vector<double> as_double;
  for (std::int64_t t : tau) {
    if (t < 0) {
      ++e.censored;
      continue;
    }
    e.taus.push_back(t);
    as_double.push_back(static_cast<double>(t));
  }
  if (e.taus.empty()) {
    throw AllCensored("every coupling path exceeded the horizon cap of " +
                      std::to_string(options.horizon_cap));
  }
  const SampleSummary summary = Summarize(as_double);
  e.mean = summary.mean;
  e.halfwidth = summary.CiHalfwidth95();
  e.ci_low = e.mean - e.halfwidth;
  e.ci_high = e.mean + e.halfwidth;
  return e;
}

ValueBoundReport CheckValueDifferenceBound(const GridDynamics& dynamics,
                                           const DiscountedSolution& solution,
                                           const Belief& psi_hat, const Belief& psi_tilde,
                                           const SplitChainConfig& config,
                                           const CouplingOptions& options) {
  const GameModel& model = dynamics.model();
  const SimplexGrid& grid = *dynamics.grid();
  auto table = std::make_shared<const StrategyTable>(solution.strategies);
  const Strategy p1 = Strategy::GridTable(Side::kRow, table);
  const Strategy p2 = Strategy::GridTable(Side::kCol, table);
  const CouplingTimeEstimate e =
      EstimateCouplingTime(model, config, psi_hat, psi_tilde, p1, p2, options);

  ValueBoundReport r;
  r.delta = config.delta;
  r.n_samples = e.n_samples;
  r.mean_tau = e.mean;
  r.ci_low = e.ci_low;
  r.ci_high = e.ci_high;
  r.censored = e.censored;
  const std::size_t ih = grid.Project(psi_hat);
  const std::size_t it = grid.Project(psi_tilde);
  r.value_hat = solution.vi.table.values[ih];
  r.value_tilde = solution.vi.table.values[it];
  r.value_diff = std::abs(r.value_hat - r.value_tilde);
  const double c_max = model.CMax();
  const double alpha = solution.vi.table.alpha;
  const double proj = L1Distance(psi_hat.probs(), grid.probs(ih)) +
                      L1Distance(psi_tilde.probs(), grid.probs(it));
  r.grid_slack = 2.0 * solution.vi.residual + c_max / (1.0 - alpha) * proj;
  r.bound_value = 2.0 * c_max * (e.mean + e.halfwidth) + r.grid_slack;
  r.pass = r.value_diff <= r.bound_value;
  return r;
}

void WriteCouplingReport(std::ostream& os, const ValueBoundReport& r) {
  const auto old = os.precision(10);
  os << "delta,n_samples,mean_tau,ci_low,ci_high,censored,value_hat,value_tilde,value_diff,"
        "grid_slack,bound_value,pass\n";
  os << r.delta << "," << r.n_samples << "," << r.mean_tau << "," << r.ci_low << ","
     << r.ci_high << "," << r.censored << "," << r.value_hat << "," << r.value_tilde << ","
     << r.value_diff << "," << r.grid_slack << "," << r.bound_value << ","
     << (r.pass ? "true" : "false") << "\n";
  os.precision(old);
}

std::string LyapunovReport::ToString() const {
  std::ostringstream os;
  os << (ok() ? "drift condition holds" : "drift condition violated") << "; worst slack "
     << worst_slack << " at (x=" << worst_x << ",u=" << worst_u << ",v=" << worst_v
     << "); sup|V| = " << sup_abs_v << "\n";
  for (const Violation& v : violations) os << "  " << v.where << ": " << v.message << "\n";
  return os.str();
}

LyapunovReport ValidateLyapunov(const GameModel& model, const LyapunovCert& cert) {
  const Dims& d = model.dims;
  if (static_cast<int>(cert.V.size()) != d.nx || static_cast<int>(cert.h.size()) != d.nx) {
    throw ValidationError("Lyapunov certificate: V and h need one entry per state");
  }
  std::vector<char> in_k(d.nx, 0);
  for (int x : cert.K) {
    if (x < 0 || x >= d.nx) throw ValidationError("Lyapunov certificate: K state out of range");
    in_k[x] = 1;
  }
  LyapunovReport r;
  r.worst_slack = -std::numeric_limits<double>::infinity();
  for (int x = 0; x < d.nx; ++x) {
    r.sup_abs_v = std::max(r.sup_abs_v, std::abs(cert.V[x]));
    for (int u = 0; u < d.nu; ++u) {
      for (int v = 0; v < d.nv; ++v) {
        double drift = -cert.V[x];
        for (int z = 0; z < d.nx; ++z) drift += model.PMarg(x, u, v, z) * cert.V[z];
        const double slack = drift - (-cert.h[x] + cert.drift_c * (in_k[x] ? 1.0 : 0.0));
        if (slack > r.worst_slack) {
          r.worst_slack = slack;
          r.worst_x = x;
          r.worst_u = u;
          r.worst_v = v;
        }
        if (slack > kDriftTolerance) {
          std::ostringstream where, msg;
          where << "(x=" << x << ",u=" << u << ",v=" << v << ")";
          msg << "PV - V = " << drift << " exceeds -h + c 1_K by " << slack;
          r.violations.push_back({where.str(), slack, msg.str()});
        }
      }
    }
  }
  for (double h : cert.h) {
    if (!(h >= 1.0)) {
      r.violations.push_back({"h", 1.0 - h, "h must be at least 1 everywhere"});
      break;
    }
  }
  return r;
}

}  // namespace posglab
