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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails. Output files for the determinism check are written
// to the directory given as the first argument (default: acceptance_out).

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.h"
#include "posglab/average.h"
#include "posglab/coupling.h"
#include "posglab/filter.h"
#include "posglab/matgame.h"
#include "posglab/parallel.h"
#include "posglab/rollout.h"
#include "posglab/shapley.h"
#include "posglab/stats.h"

namespace posglab {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
  double seconds = -1.0;  // measured by the caller when set
};

int failures = 0;

void Report(int id, const std::string& title, double limit_seconds,
            const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = o.seconds >= 0.0
                          ? o.seconds
                          : std::chrono::duration<double>(Clock::now() - start).count();
  const bool in_time = limit_seconds <= 0 || secs <= limit_seconds;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("[%s] %2d %s: %s; %.2f s%s\n", pass ? "PASS" : "FAIL", id, title.c_str(),
              o.detail.c_str(), secs, in_time ? "" : " (over time limit)");
  std::fflush(stdout);
}

std::string Fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::shared_ptr<const SimplexGrid> Grid(int nx, int m) {
  return std::make_shared<const SimplexGrid>(SimplexGrid::Build(nx, m));
}

Outcome MatrixGames() {
  std::mt19937_64 gen(1);
  std::uniform_int_distribution<int> dim(1, 6);
  std::uniform_real_distribution<double> entry(-10.0, 10.0);
  double worst_cert = 0.0, worst_dual = 0.0;
  for (int t = 0; t < 500; ++t) {
    MatrixGame a = MatrixGame::Zeros(dim(gen), dim(gen));
    for (int u = 0; u < a.rows(); ++u) {
      for (int v = 0; v < a.cols(); ++v) a(u, v) = entry(gen);
    }
    const GameSolution s = Solve(a);
    worst_cert = std::max({worst_cert,
                           std::abs(BestResponseValue(a, s.row, Side::kCol).value - s.value),
                           std::abs(BestResponseValue(a, s.col, Side::kRow).value - s.value)});
    worst_dual = std::max(worst_dual, std::abs(Solve(a.NegatedTranspose()).value + s.value));
  }
  return {worst_cert <= 1e-8 && worst_dual <= 1e-8,
          "500 games, max certificate gap " + Fmt("%.2e", worst_cert) + ", max duality gap " +
              Fmt("%.2e", worst_dual) + " (tol 1e-8)"};
}

Outcome FilterOracle() {
  const GameModel m = CanonicalModel("CANON2");
  double worst = 0.0;
  int histories = 0;
  std::vector<std::vector<HistoryStep>> level{{}};
  for (int len = 1; len <= 3; ++len) {
    std::vector<std::vector<HistoryStep>> next;
    for (const auto& h : level) {
      for (int u = 0; u < 2; ++u) {
        for (int v = 0; v < 2; ++v) {
          for (int y = 0; y < 2; ++y) {
            auto e = h;
            e.push_back({u, v, y});
            Belief psi(m.initial_belief);
            for (const auto& s : e) psi = FilterUpdate(m, psi, s.u, s.v, s.y);
            const Belief ref = BruteForcePosterior(m, e);
            for (int x = 0; x < 2; ++x) worst = std::max(worst, std::abs(psi[x] - ref[x]));
            ++histories;
            next.push_back(std::move(e));
          }
        }
      }
    }
    level = std::move(next);
  }
  return {worst <= 1e-10, std::to_string(histories) + " histories, max deviation " +
                              Fmt("%.2e", worst) + " (tol 1e-10)"};
}

Outcome ShapleyProperties() {
  double worst_contr = -1.0, worst_shift = 0.0;
  const double alpha = 0.9;
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> val(-10.0, 10.0);
  for (const char* name : {"CANON2", "INSPECT2"}) {
    const GridDynamics dyn(CanonicalModel(name), Grid(2, 16));
    for (int t = 0; t < 100; ++t) {
      std::vector<double> v(dyn.size()), w(dyn.size());
      for (double& x : v) x = val(gen);
      for (double& x : w) x = val(gen);
      const auto tv = ApplyOperator(dyn, v, alpha).values;
      const auto tw = ApplyOperator(dyn, w, alpha).values;
      double dt = 0.0, d = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        dt = std::max(dt, std::abs(tv[i] - tw[i]));
        d = std::max(d, std::abs(v[i] - w[i]));
      }
      worst_contr = std::max(worst_contr, dt - alpha * d);
      const double k = val(gen);
      auto shifted = v;
      for (double& x : shifted) x += k;
      const auto ts = ApplyOperator(dyn, shifted, alpha).values;
      for (std::size_t i = 0; i < v.size(); ++i) {
        worst_shift = std::max(worst_shift, std::abs(ts[i] - tv[i] - alpha * k));
      }
    }
  }
  return {worst_contr <= 1e-9 && worst_shift <= 1e-9,
          "200 pairs (CANON2, INSPECT2), max ||TV-TW|| - alpha||V-W|| = " +
              Fmt("%.2e", worst_contr) + ", max shift error " + Fmt("%.2e", worst_shift) +
              " (tol 1e-9)"};
}

Outcome DiscountedOracles() {
  const GameModel un = CanonicalModel("UNCTRL2");
  const auto g64 = Grid(2, 64);
  const double alpha = 0.9;
  const auto r = ValueIterate(un, g64, alpha);
  const auto series =
      oracle::TruncatedDiscountedSeries({{0.9, 0.1}, {0.2, 0.8}}, {2.0, -1.0}, alpha, 600);
  double err_a = 0.0;
  for (int x = 0; x < 2; ++x) {
    err_a = std::max(err_a, std::abs(r.table.values[g64->VertexIndex(x)] - series[x]));
  }
  const double tol_a = 0.02 * un.CMax() / (1.0 - alpha);

  const GameModel fo = CanonicalModel("FULLOBS3");
  const double tol = 1e-6;
  const auto g3 = Grid(3, 8);
  ValueIterationOptions opt;
  opt.tol = tol;
  const auto rf = ValueIterate(fo, g3, alpha, opt);
  const auto direct = oracle::FullyObservedValue(fo, alpha, 1e-13);
  double err_b = 0.0;
  for (int x = 0; x < 3; ++x) {
    err_b = std::max(err_b, std::abs(rf.table.values[g3->VertexIndex(x)] - direct[x]));
  }
  return {err_a <= tol_a && err_b <= 2 * tol,
          "(a) UNCTRL2 vertex error " + Fmt("%.3e", err_a) + " (tol " + Fmt("%.2f", tol_a) +
              "); (b) FULLOBS3 vertex error " + Fmt("%.2e", err_b) + " (tol 2e-6)"};
}

// Criteria 5-8 produce the files compared by criterion 10.
struct PipelineResult {
  std::map<std::string, std::string> files;
  Outcome c5, c6, c7, c8;
};

PipelineResult RunPipeline(int threads) {
  PipelineResult out;
  auto lap = Clock::now();
  auto elapsed = [&lap] {
    const auto now = Clock::now();
    const double s = std::chrono::duration<double>(now - lap).count();
    lap = now;
    return s;
  };
  ValueIterationOptions vio;
  vio.threads = threads;
  const auto alphas = DefaultAlphaSchedule();
  const auto g32 = Grid(2, 32);

  // 5: vanishing discount.
  std::map<std::string, std::shared_ptr<const StrategyTable>> tables;
  {
    double worst_sep = 0.0, worst_canon = 0.0;
    for (const char* name : {"SEPARABLE2", "CANON2"}) {
      const GridDynamics dyn(CanonicalModel(name), g32, threads);
      const VanishingDiscountRun run = RunVanishingDiscount(dyn, alphas, Belief::Uniform(2), vio);
      const double target = std::string(name) == "SEPARABLE2" ? 1.5 : 0.0;
      double& worst = std::string(name) == "SEPARABLE2" ? worst_sep : worst_canon;
      for (double g : run.gammas) worst = std::max(worst, std::abs(g - target));
      std::ostringstream os;
      WriteResultsTable(os, run, false);
      out.files[std::string("gamma_") + name + ".csv"] = os.str();
      tables[name] = std::make_shared<const StrategyTable>(ExtractStrategies(
          dyn, run.tables.back().values, run.alphas.back(), threads));
    }
    out.c5 = {worst_sep <= 1e-4 && worst_canon <= 1e-6,
              "m=32, 7 discounts; separable max |gamma-1.5| " + Fmt("%.2e", worst_sep) +
                  " (tol 1e-4), CANON2 max |gamma| " + Fmt("%.2e", worst_canon) + " (tol 1e-6)", elapsed()};
  }

  // 6: coupling laboratory on CANON2 with K = X.
  {
    const GameModel m = CanonicalModel("CANON2");
    const SplitChainConfig cfg = MakeSplitChainConfig(m, AllStates(m), 0.9);
    const bool delta_ok = std::abs(cfg.delta - 0.08) <= 1e-15;
    const auto table = tables["CANON2"];
    const Strategy p1 = Strategy::GridTable(Side::kRow, table);
    const Strategy p2 = Strategy::GridTable(Side::kCol, table);
    CouplingOptions copt;
    copt.n_samples = 10000;
    copt.seed = 0;
    copt.threads = threads;
    const Belief hat = Belief::PointMass(2, 0), tilde = Belief::PointMass(2, 1);
    const CouplingTimeEstimate est = EstimateCouplingTime(m, cfg, hat, tilde, p1, p2, copt);
    const TestResult ks = KsGeometric(est.taus, cfg.delta, 0.01);

    // Joint pair law after n steps against (hat P^n) x (tilde P^n).
    const int steps = 5, paths = 100000;
    std::vector<std::vector<std::int64_t>> counts(steps, std::vector<std::int64_t>(4, 0));
    {
      std::vector<std::array<int, steps>> cells(paths);
      ParallelFor(paths, threads, [&](std::size_t path) {
        Rng rng = Rng::ForPath(1, path);
        SplitChainState s = InitialSplitState(cfg, hat, tilde, rng);
        for (int n = 0; n < steps; ++n) {
          const int u = rng.Categorical(p1.Act(m, s.psi_hat.probs()).probs);
          const int v = rng.Categorical(p2.Act(m, s.psi_tilde.probs()).probs);
          s = StepSplitChain(m, cfg, s, u, v, rng);
          cells[path][n] = s.x_hat * 2 + s.x_tilde;
        }
      });
      for (const auto& c : cells) {
        for (int n = 0; n < steps; ++n) ++counts[n][c[n]];
      }
    }
    bool chi_ok = true;
    double min_p = 1.0;
    std::vector<double> a{1.0, 0.0}, b{0.0, 1.0};
    for (int n = 0; n < steps; ++n) {
      a = {0.8 * a[0] + 0.3 * a[1], 0.2 * a[0] + 0.7 * a[1]};
      b = {0.8 * b[0] + 0.3 * b[1], 0.2 * b[0] + 0.7 * b[1]};
      const std::vector<double> probs{a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
      const TestResult t = ChiSquareGoodnessOfFit(counts[n], probs, 0.01 / steps);
      chi_ok = chi_ok && t.pass;
      min_p = std::min(min_p, t.p_value);
    }

    const GridDynamics dyn(m, g32, threads);
    const DiscountedSolution sol = SolveDiscounted(dyn, 0.9, vio);
    const ValueBoundReport bound = CheckValueDifferenceBound(dyn, sol, hat, tilde, cfg, copt);
    std::ostringstream os;
    WriteCouplingReport(os, bound);
    os << "tau";
    for (auto t : est.taus) os << "," << t;
    os << "\n";
    out.files["coupling_CANON2.csv"] = os.str();
    out.c6 = {delta_ok && ks.pass && chi_ok && bound.pass,
              "delta " + Fmt("%.17g", cfg.delta) + "; mean tau " + Fmt("%.3f", est.mean) +
                  " (theory 11.5), KS D " + Fmt("%.4f", ks.statistic) + " vs " +
                  Fmt("%.4f", ks.critical) + "; pair-law chi-square min p " +
                  Fmt("%.3f", min_p) + " (Bonferroni 0.01/5); |dV| " +
                  Fmt("%.2e", bound.value_diff) + " <= " + Fmt("%.3f", bound.bound_value),
              elapsed()};
  }

  // 7: saddle battery.
  {
    RolloutOptions ro;
    ro.episodes = 200;
    ro.horizon = 10000;
    ro.seed = 0;
    ro.threads = threads;
    bool ok = true;
    std::string detail;
    for (const auto& [name, gamma] :
         std::vector<std::pair<std::string, double>>{{"SEPARABLE2", 1.5}, {"CANON2", 0.0}}) {
      const GameModel m = CanonicalModel(name);
      const auto table = tables[name];
      const SaddleReport r = SaddleTest(m, table, gamma, DefaultAdversaryPool(m, table), ro, 0.05);
      std::ostringstream os;
      WriteSaddleReport(os, r);
      out.files["saddle_" + name + ".csv"] = os.str();
      double worst = 0.0;  // largest one-sided violation of the flat 0.05 margin
      for (const auto& c : r.comparisons) {
        const double gap = c.side == "p2"   ? gamma - c.mean
                           : c.side == "p1" ? c.mean - gamma
                                            : std::abs(c.mean - gamma);
        worst = std::max(worst, gap);
      }
      ok = ok && r.pass() && worst <= 0.05;
      detail += name + ": " + std::to_string(r.comparisons.size()) + " comparisons, " +
                (r.pass() ? "all pass" : "failures") + ", worst shortfall " +
                Fmt("%.4f", worst) + "; ";
    }
    out.c7 = {ok, detail + "slack 0.05 (+3 stderr), horizon 1e4, 200 episodes", elapsed()};
  }

  // 8: payoff equivalence.
  {
    RolloutOptions ro;
    ro.episodes = 200;
    ro.horizon = 10000;
    ro.seed = 0;
    ro.threads = threads;
    bool ok = true;
    std::string detail;
    for (const char* name : {"CANON2", "UNCTRL2"}) {
      const GameModel m = CanonicalModel(name);
      const PayoffEquivalenceReport p =
          PayoffEquivalenceTest(m, Strategy::UniformRandom(Side::kRow, m.dims.nu),
                                Strategy::UniformRandom(Side::kCol, m.dims.nv), ro);
      std::ostringstream os;
      os.precision(17);
      os << "hidden_mean,belief_mean,difference,combined_stderr,tolerance,pass\n"
         << p.hidden_mean << "," << p.belief_mean << "," << p.difference << ","
         << p.combined_std_error << "," << p.tolerance << "," << (p.pass ? "pass" : "fail")
         << "\n";
      out.files[std::string("payoff_") + name + ".csv"] = os.str();
      ok = ok && p.pass;
      detail += std::string(name) + ": hidden " + Fmt("%.5f", p.hidden_mean) + ", belief " +
                Fmt("%.5f", p.belief_mean) + ", |diff| " + Fmt("%.2e", std::abs(p.difference)) +
                " <= " + Fmt("%.2e", p.tolerance);
      if (std::string(name) == "CANON2") detail += "; ";
    }
    out.c8 = {ok, detail, elapsed()};
  }
  return out;
}

Outcome Lyapunov() {
  const GameModel m = CanonicalModel("INSPECT2");
  const LyapunovCert good = *m.lyapunov;
  LyapunovCert bad = good;
  bad.h.assign(bad.h.size(), 2.0);
  const LyapunovReport rg = ValidateLyapunov(m, good);
  const LyapunovReport rb = ValidateLyapunov(m, bad);
  return {rg.ok() && !rb.ok() && rb.worst_slack == 1.0,
          std::string("constant-V certificate ") + (rg.ok() ? "passes" : "fails") +
              "; h = 2 certificate " + (rb.ok() ? "passes" : "fails") + " with slack " +
              Fmt("%.17g", rb.worst_slack)};
}

}  // namespace
}  // namespace posglab

int main(int argc, char** argv) {
  using namespace posglab;
  const std::filesystem::path dir = argc > 1 ? argv[1] : "acceptance_out";
  std::filesystem::create_directories(dir);
  const int many = std::max(4u, std::thread::hardware_concurrency());
  std::printf("posglab acceptance suite (hardware threads: %u)\n",
              std::thread::hardware_concurrency());

  Report(1, "Matrix-game saddle certification", 10, MatrixGames);
  Report(2, "Filter-oracle equivalence", 5, FilterOracle);
  Report(3, "Shapley contraction and affine shift", 0, ShapleyProperties);
  Report(4, "Discounted oracles", 60, DiscountedOracles);

  const PipelineResult single = RunPipeline(1);
  Report(5, "Vanishing discount on separable costs", 120, [&] { return single.c5; });
  Report(6, "Coupling laboratory", 60, [&] { return single.c6; });
  Report(7, "Saddle-point verification", 120, [&] { return single.c7; });
  Report(8, "Payoff equivalence", 0, [&] { return single.c8; });

  Report(9, "Lyapunov validator", 0, Lyapunov);

  Report(10, "Determinism across thread counts", 0, [&]() -> Outcome {
    const PipelineResult parallel = RunPipeline(many);
    std::vector<std::string> differ;
    for (const auto& [name, text] : single.files) {
      for (const auto& [tag, body] : {std::pair{"t1", &text}, std::pair{"tN", &parallel.files.at(name)}}) {
        std::ofstream(dir / (std::string(tag) + "_" + name), std::ios::binary) << *body;
      }
      std::ifstream a(dir / ("t1_" + name), std::ios::binary), b(dir / ("tN_" + name), std::ios::binary);
      const std::string sa((std::istreambuf_iterator<char>(a)), {});
      const std::string sb((std::istreambuf_iterator<char>(b)), {});
      if (sa != sb || sa.empty()) differ.push_back(name);
    }
    std::string detail = std::to_string(single.files.size()) + " files compared, 1 vs " +
                         std::to_string(many) + " threads";
    for (const auto& n : differ) detail += "; differs: " + n;
    return {differ.empty(), detail};
  });

  std::printf("%s: %d criterion(s) failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
