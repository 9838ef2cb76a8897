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

// posglab command-line front end.
//
// Exit codes: 0 success, 1 validation or check failure, 2 usage error.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "CLI11.hpp"
#include "posglab/average.h"
#include "posglab/coupling.h"
#include "posglab/errors.h"
#include "posglab/model_io.h"
#include "posglab/rollout.h"
#include "posglab/shapley.h"

namespace posglab {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every resolved parameter of a run; echoed to stderr and into output headers.
struct RunConfig {
  std::string command;
  std::string model = "";
  int m = 32;
  double alpha = 0.9;
  std::vector<double> alphas = DefaultAlphaSchedule();
  double tol = 1e-6;
  int max_iter = 100000;
  std::uint64_t seed = 0;
  std::size_t episodes = 200;
  std::int64_t horizon = 10000;
  std::string out = "-";
  std::vector<int> small_set;
  std::vector<double> psi_star;
  std::vector<double> psi1;
  std::vector<double> psi2;
  std::string s1 = "uniform";
  std::string s2 = "uniform";
  std::string table;
  std::string table_out;
  double gamma = 0.0;
  double slack = 0.05;
  std::size_t n_samples = 10000;
  std::int64_t horizon_cap = 1'000'000;
  int threads = 1;
  bool timing = true;

  // include_threads is false for output files: the worker count never changes
  // results, and leaving it out keeps files byte-identical across --threads.
  std::string Echo(bool include_threads = false) const;
};

// Shortest text that reads back to the same double.
std::string Num(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}
std::string Num(int x) { return std::to_string(x); }

template <typename T>
std::string Join(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + Num(v[i]);
  return s;
}

std::string RunConfig::Echo(bool include_threads) const {
  std::ostringstream os;
  os << "# posglab " << command << "\n# model = " << model << "\n";
  if (include_threads) os << "# threads = " << threads << "\n";
  auto line = [&](const char* key, const auto& value) {
    os << "# " << key << " = ";
    if constexpr (std::is_floating_point_v<std::decay_t<decltype(value)>>) {
      os << Num(value);
    } else {
      os << value;
    }
    os << "\n";
  };
  if (command == "solve-discounted" || command == "couple") {
    line("m", m);
    line("alpha", alpha);
  }
  if (command == "solve-average") {
    line("m", m);
    line("alphas", Join(alphas));
    line("psi_star", psi_star.empty() ? std::string("initial_belief") : Join(psi_star));
    if (!table_out.empty()) line("table_out", table_out);
    line("timing", timing ? "on" : "off");
  }
  if (command.rfind("solve", 0) == 0 || command == "couple") {
    line("tol", tol);
    line("max_iter", max_iter);
  }
  if (command == "simulate" || command == "saddle") {
    line("episodes", episodes);
    line("horizon", horizon);
    line("seed", seed);
  }
  if (command == "simulate") {
    line("s1", s1);
    line("s2", s2);
  }
  if (command == "saddle") {
    line("table", table);
    line("gamma", gamma);
    line("slack", slack);
  }
  if (command == "couple") {
    line("K", small_set.empty() ? std::string("all") : Join(small_set));
    line("psi1", Join(psi1));
    line("psi2", Join(psi2));
    line("n", n_samples);
    line("horizon_cap", horizon_cap);
    line("seed", seed);
  }
  line("out", out);
  return os.str();
}

GameModel ResolveModel(const std::string& spec) {
  const std::string prefix = "builtin:";
  if (spec.rfind(prefix, 0) == 0) {
    try {
      return CanonicalModel(spec.substr(prefix.size()));
    } catch (const std::out_of_range&) {
      throw UsageError("unknown built-in model \"" + spec.substr(prefix.size()) + "\"");
    }
  }
  return LoadModel(spec);
}

// Writes to the named file, or to stdout for "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error(path + ": cannot open for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

Belief ToBelief(const std::vector<double>& p, int nx, const char* what) {
  if (static_cast<int>(p.size()) != nx) {
    throw UsageError(std::string(what) + " needs " + std::to_string(nx) + " entries");
  }
  try {
    return Belief(p);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
}

std::shared_ptr<const StrategyTable> LoadTableFor(const GameModel& model, const std::string& path) {
  SolutionFile f = LoadSolution(path);
  if (f.dims.nx != model.dims.nx || f.dims.nu != model.dims.nu || f.dims.nv != model.dims.nv) {
    throw ValidationError(path + ": table dimensions do not match the model");
  }
  return std::make_shared<const StrategyTable>(std::move(f.strategies));
}

// uniform | pure:K | mixed:p0,p1,... | table:PATH | greedy:PATH
Strategy ParseStrategy(const std::string& spec, Side side, const GameModel& model) {
  const int n = side == Side::kRow ? model.dims.nu : model.dims.nv;
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "uniform") return Strategy::UniformRandom(side, n);
  if (kind == "pure") {
    int a = -1;
    try {
      a = std::stoi(arg);
    } catch (const std::exception&) {
    }
    if (a < 0 || a >= n) throw UsageError("strategy \"" + spec + "\": action out of range");
    return Strategy::FixedMixed(side, MixedAction::PointMass(n, a));
  }
  if (kind == "mixed") {
    std::vector<double> p;
    std::stringstream ss(arg);
    std::string item;
    try {
      while (std::getline(ss, item, ',')) p.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("strategy \"" + spec + "\": bad probability list");
    }
    MixedAction m{p};
    if (m.size() != n || !m.IsValid()) {
      throw UsageError("strategy \"" + spec + "\": not a distribution over " + std::to_string(n) +
                       " actions");
    }
    return Strategy::FixedMixed(side, m);
  }
  if (kind == "table") return Strategy::GridTable(side, LoadTableFor(model, arg));
  if (kind == "greedy") return Strategy::MyopicGreedy(side, LoadTableFor(model, arg));
  throw UsageError("unknown strategy \"" + spec + "\" (use uniform, pure:K, mixed:..., table:PATH, "
                   "greedy:PATH)");
}

ValueIterationOptions ViOptions(const RunConfig& c) {
  ValueIterationOptions o;
  o.tol = c.tol;
  o.max_iter = c.max_iter;
  o.threads = c.threads;
  return o;
}

std::shared_ptr<const SimplexGrid> MakeGrid(const GameModel& model, int m) {
  return std::make_shared<const SimplexGrid>(SimplexGrid::Build(model.dims.nx, m));
}

int CmdValidate(const RunConfig& c) {
  GameModel model;
  if (c.model.rfind("builtin:", 0) == 0) {
    model = ResolveModel(c.model);
  } else {
    model = ParseModelUnchecked(ReadTextFile(c.model), c.model);
  }
  const ValidationReport r = Validate(model);
  Output out(c.out);
  out.stream() << c.Echo() << "model " << model.name << ": nx=" << model.dims.nx
               << " ny=" << model.dims.ny << " nu=" << model.dims.nu << " nv=" << model.dims.nv
               << "\n"
               << r.ToString();
  if (r.ok() && model.lyapunov) {
    const LyapunovReport ly = ValidateLyapunov(model, *model.lyapunov);
    out.stream() << "lyapunov: " << ly.ToString();
    if (!ly.ok()) return kExitFailure;
  }
  return r.ok() ? kExitOk : kExitFailure;
}

int CmdSolveDiscounted(const RunConfig& c) {
  const GameModel model = ResolveModel(c.model);
  const GridDynamics dyn(model, MakeGrid(model, c.m), c.threads);
  const DiscountedSolution s = SolveDiscounted(dyn, c.alpha, ViOptions(c));
  Output out(c.out);
  out.stream() << c.Echo();
  WriteSolution(out.stream(), {model.name, model.dims, c.m, c.alpha, s.vi.residual,
                               s.vi.iterations, s.vi.table, s.strategies});
  std::cerr << "solve-discounted: " << s.vi.iterations << " sweeps, residual " << s.vi.residual
            << "\n";
  return kExitOk;
}

int CmdSolveAverage(const RunConfig& c) {
  const GameModel model = ResolveModel(c.model);
  const GridDynamics dyn(model, MakeGrid(model, c.m), c.threads);
  const Belief psi_star =
      ToBelief(c.psi_star.empty() ? model.initial_belief : c.psi_star, model.dims.nx, "--psi-star");
  const VanishingDiscountRun run = RunVanishingDiscount(dyn, c.alphas, psi_star, ViOptions(c));
  {
    Output out(c.out);
    out.stream() << c.Echo() << "# psi_star_grid = " << Join(std::vector<double>(
                                                             run.psi_star.probs().begin(),
                                                             run.psi_star.probs().end()))
                 << "\n";
    out.stream().precision(17);
    out.stream() << "# gamma_estimate = " << run.gamma_estimate << "\n";
    WriteResultsTable(out.stream(), run, c.timing);
  }
  if (!c.table_out.empty()) {
    const double alpha = run.alphas.back();
    const StrategyTable st = ExtractStrategies(dyn, run.tables.back().values, alpha, c.threads);
    Output table(c.table_out);
    table.stream() << c.Echo();
    const AlphaDiagnostics& d = run.diagnostics.back();
    WriteSolution(table.stream(), {model.name, model.dims, c.m, alpha, d.vi_residual,
                                   d.iterations, run.tables.back(), st});
  }
  std::cerr.precision(10);
  std::cerr << "solve-average: gamma estimate " << run.gamma_estimate << "\n";
  return kExitOk;
}

int CmdSimulate(const RunConfig& c) {
  const GameModel model = ResolveModel(c.model);
  const Strategy s1 = ParseStrategy(c.s1, Side::kRow, model);
  const Strategy s2 = ParseStrategy(c.s2, Side::kCol, model);
  RolloutOptions ro{c.episodes, c.horizon, c.seed, c.threads};
  const PayoffEquivalenceReport p = PayoffEquivalenceTest(model, s1, s2, ro);
  Output out(c.out);
  std::ostream& os = out.stream();
  os << c.Echo();
  os.precision(17);
  os << "# mean_avg_payoff = " << p.hidden_mean << "\n# std_error = " << p.rollout.std_error
     << "\n# belief_mean_avg_payoff = " << p.belief_mean
     << "\n# first_half_mean = " << p.rollout.first_half_mean
     << "\n# second_half_mean = " << p.rollout.second_half_mean
     << "\n# payoff_equivalence = " << (p.pass ? "pass" : "fail") << " (|diff| "
     << std::abs(p.difference) << " vs 3 combined stderr " << p.tolerance << ")\n";
  os << "episode,hidden_average,belief_average\n";
  for (std::size_t e = 0; e < p.rollout.episodes; ++e) {
    os << e << "," << p.rollout.per_episode_averages[e] << ","
       << p.rollout.per_episode_belief_averages[e] << "\n";
  }
  std::cerr.precision(10);
  std::cerr << "simulate: mean " << p.hidden_mean << " +/- " << p.rollout.std_error
            << "; payoff equivalence " << (p.pass ? "pass" : "FAIL") << "\n";
  return p.pass ? kExitOk : kExitFailure;
}

int CmdSaddle(const RunConfig& c) {
  const GameModel model = ResolveModel(c.model);
  if (c.table.empty()) throw UsageError("--table is required");
  const auto table = LoadTableFor(model, c.table);
  RolloutOptions ro{c.episodes, c.horizon, c.seed, c.threads};
  const SaddleReport r =
      SaddleTest(model, table, c.gamma, DefaultAdversaryPool(model, table), ro, c.slack);
  Output out(c.out);
  out.stream() << c.Echo();
  WriteSaddleReport(out.stream(), r);
  std::cerr << "saddle: " << (r.pass() ? "all comparisons pass" : "FAILED") << "\n";
  return r.pass() ? kExitOk : kExitFailure;
}

int CmdCouple(const RunConfig& c) {
  const GameModel model = ResolveModel(c.model);
  const int nx = model.dims.nx;
  const std::vector<int> k = c.small_set.empty() ? AllStates(model) : c.small_set;
  const SplitChainConfig cfg = MakeSplitChainConfig(model, k, c.alpha);
  std::vector<double> first(nx, 0.0), last(nx, 0.0);
  first.front() = 1.0;
  last.back() = 1.0;
  const Belief hat = ToBelief(c.psi1.empty() ? first : c.psi1, nx, "--psi1");
  const Belief tilde = ToBelief(c.psi2.empty() ? last : c.psi2, nx, "--psi2");
  const GridDynamics dyn(model, MakeGrid(model, c.m), c.threads);
  const DiscountedSolution sol = SolveDiscounted(dyn, c.alpha, ViOptions(c));
  CouplingOptions co{c.n_samples, c.horizon_cap, c.seed, c.threads};
  const ValueBoundReport r = CheckValueDifferenceBound(dyn, sol, hat, tilde, cfg, co);

  Output out(c.out);
  std::ostream& os = out.stream();
  os << c.Echo();
  WriteCouplingReport(os, r);
  bool ok = r.pass;
  if (model.lyapunov) {
    const LyapunovReport ly = ValidateLyapunov(model, *model.lyapunov);
    os << "# lyapunov: " << ly.ToString();
    double v_hat = 0.0, v_tilde = 0.0;
    for (int x = 0; x < nx; ++x) {
      v_hat += hat[x] * model.lyapunov->V[x];
      v_tilde += tilde[x] * model.lyapunov->V[x];
    }
    // Diagnostic only: E[tau] relative to the drift function at the start.
    if (v_hat + v_tilde > 0.0) {
      os << "# tau_over_V = " << r.mean_tau / (v_hat + v_tilde) << "\n";
    } else {
      os << "# tau_over_V = n/a (V vanishes at the initial beliefs)\n";
    }
    ok = ok && ly.ok();
  }
  std::cerr << "couple: delta " << r.delta << ", mean tau " << r.mean_tau << ", bound "
            << (r.pass ? "holds" : "VIOLATED") << "\n";
  return ok ? kExitOk : kExitFailure;
}

}  // namespace
}  // namespace posglab

int main(int argc, char** argv) {
  using namespace posglab;
  CLI::App app{"posglab: solver and verification lab for zero-sum partially observable "
               "stochastic games"};
  app.require_subcommand(1);
  RunConfig c;

  auto model_opt = [&](CLI::App* sub) {
    sub->add_option("--model", c.model, "model file, or builtin:NAME")->required();
    sub->add_option("--threads", c.threads, "worker threads (results do not depend on it)")
        ->check(CLI::Range(1, 1024));
    sub->add_option("-o,--out", c.out, "output file, - for stdout");
  };
  auto solver_opts = [&](CLI::App* sub) {
    sub->add_option("--m", c.m, "grid resolution")->check(CLI::Range(1, 1 << 20));
    sub->add_option("--tol", c.tol, "value-iteration tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-iter", c.max_iter, "value-iteration sweep cap")
        ->check(CLI::Range(1, 100000000));
  };
  auto sim_opts = [&](CLI::App* sub) {
    sub->add_option("--episodes", c.episodes, "episodes")->check(CLI::Range(1, 100000000));
    sub->add_option("--horizon", c.horizon, "steps per episode")
        ->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40));
    sub->add_option("--seed", c.seed, "master seed");
  };
  const auto unit_alpha = CLI::Range(0.0, 1.0);

  CLI::App* validate = app.add_subcommand("validate", "check a model file");
  model_opt(validate);

  CLI::App* disc = app.add_subcommand("solve-discounted", "discounted values and strategies");
  model_opt(disc);
  solver_opts(disc);
  disc->add_option("--alpha", c.alpha, "discount factor in [0, 1)")->check(unit_alpha);

  CLI::App* avg = app.add_subcommand("solve-average", "vanishing-discount average value");
  model_opt(avg);
  solver_opts(avg);
  avg->add_option("--alphas", c.alphas, "increasing discount schedule")->delimiter(',');
  avg->add_option("--psi-star", c.psi_star, "reference belief")->delimiter(',');
  avg->add_option("--table-out", c.table_out, "write the strategy table at the last discount");
  avg->add_flag("!--no-timing", c.timing, "omit the wall-time column");

  CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo play and payoff equivalence");
  model_opt(sim);
  sim_opts(sim);
  sim->add_option("--s1", c.s1, "player 1: uniform | pure:K | mixed:P,... | table:PATH | greedy:PATH");
  sim->add_option("--s2", c.s2, "player 2: same forms as --s1");

  CLI::App* sad = app.add_subcommand("saddle", "defend gamma against the adversary pool");
  model_opt(sad);
  sim_opts(sad);
  sad->add_option("--table", c.table, "strategy table written by a solve command")->required();
  sad->add_option("--gamma", c.gamma, "average value to defend")->required();
  sad->add_option("--slack", c.slack, "grid and VI budget added to 3 stderr")
      ->check(CLI::NonNegativeNumber);

  CLI::App* cpl = app.add_subcommand("couple", "split-chain coupling laboratory");
  model_opt(cpl);
  solver_opts(cpl);
  cpl->add_option("--alpha", c.alpha, "discount factor of the value-difference check")
      ->check(unit_alpha);
  cpl->add_option("--K", c.small_set, "small set (default: all states)")->delimiter(',');
  cpl->add_option("--psi1", c.psi1, "first initial belief (default: first vertex)")->delimiter(',');
  cpl->add_option("--psi2", c.psi2, "second initial belief (default: last vertex)")->delimiter(',');
  cpl->add_option("--n", c.n_samples, "coupling paths")->check(CLI::Range(1, 100000000));
  cpl->add_option("--horizon-cap", c.horizon_cap, "censoring horizon")
      ->check(CLI::Range(std::int64_t{0}, std::int64_t{1} << 40));
  cpl->add_option("--seed", c.seed, "master seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  c.command = sub->get_name();
  if ((c.command == "solve-discounted" || c.command == "couple") && !(c.alpha < 1.0)) {
    std::cerr << "error: --alpha must be below 1\n";
    return kExitUsage;
  }
  std::cerr << c.Echo(true);
  try {
    if (c.command == "validate") return CmdValidate(c);
    if (c.command == "solve-discounted") return CmdSolveDiscounted(c);
    if (c.command == "solve-average") return CmdSolveAverage(c);
    if (c.command == "simulate") return CmdSimulate(c);
    if (c.command == "saddle") return CmdSaddle(c);
    if (c.command == "couple") return CmdCouple(c);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NoMinorization& e) {
    std::cerr << "NoMinorization: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
