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

// Python bindings for the posglab core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <string>
#include <vector>

#include "posglab/average.h"
#include "posglab/coupling.h"
#include "posglab/errors.h"
#include "posglab/filter.h"
#include "posglab/matgame.h"
#include "posglab/model.h"
#include "posglab/model_io.h"
#include "posglab/rollout.h"
#include "posglab/shapley.h"

namespace py = pybind11;

namespace posglab {
namespace {

// A discounted solve together with the dynamics it was computed on.
struct PySolution {
  std::shared_ptr<const GridDynamics> dynamics;
  DiscountedSolution solution;
  std::shared_ptr<const StrategyTable> table;
};

std::shared_ptr<const GridDynamics> MakeDynamics(const GameModel& model, int m, int threads) {
  auto grid = std::make_shared<const SimplexGrid>(SimplexGrid::Build(model.dims.nx, m));
  return std::make_shared<const GridDynamics>(model, std::move(grid), threads);
}

ValueIterationOptions Options(double tol, int max_iter, int threads) {
  ValueIterationOptions o;
  o.tol = tol;
  o.max_iter = max_iter;
  o.threads = threads;
  return o;
}

PySolution SolveDiscountedPy(const GameModel& model, int m, double alpha, double tol,
                             int max_iter, int threads) {
  PySolution s;
  s.dynamics = MakeDynamics(model, m, threads);
  {
    py::gil_scoped_release release;
    s.solution = SolveDiscounted(*s.dynamics, alpha, Options(tol, max_iter, threads));
  }
  s.table = std::make_shared<const StrategyTable>(s.solution.strategies);
  return s;
}

py::dict VanishingDiscountPy(const GameModel& model, int m, std::vector<double> alphas,
                             std::vector<double> psi_star, double tol, int threads) {
  const auto dyn = MakeDynamics(model, m, threads);
  if (alphas.empty()) alphas = DefaultAlphaSchedule();
  const Belief ref(psi_star.empty() ? model.initial_belief : psi_star);
  VanishingDiscountRun run;
  {
    py::gil_scoped_release release;
    run = RunVanishingDiscount(*dyn, alphas, ref, Options(tol, 100000, threads));
  }
  py::list diagnostics;
  for (const AlphaDiagnostics& d : run.diagnostics) {
    py::dict row;
    row["alpha"] = d.alpha;
    row["value_at_ref"] = d.value_at_ref;
    row["gamma"] = d.gamma;
    row["sup_relative"] = d.sup_relative;
    row["max_abs_residual"] = d.max_abs_residual;
    row["mean_abs_residual"] = d.mean_abs_residual;
    row["iterations"] = d.iterations;
    row["vi_residual"] = d.vi_residual;
    diagnostics.append(row);
  }
  py::dict out;
  out["alphas"] = run.alphas;
  out["gammas"] = run.gammas;
  out["gamma_estimate"] = run.gamma_estimate;
  out["successive_differences"] = run.successive_differences;
  out["psi_star"] = std::vector<double>(run.psi_star.probs().begin(), run.psi_star.probs().end());
  out["diagnostics"] = diagnostics;
  return out;
}

}  // namespace
}  // namespace posglab

PYBIND11_MODULE(_posglab, m) {
  using namespace posglab;
  m.doc() = "Solver and verification lab for zero-sum partially observable stochastic games";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
  py::register_exception<ZeroProbabilityObservation>(m, "ZeroProbabilityObservation", error.ptr());
  py::register_exception<ZeroProbabilityHistory>(m, "ZeroProbabilityHistory", error.ptr());
  py::register_exception<NumericalFailure>(m, "NumericalFailure", error.ptr());
  py::register_exception<ResourceLimit>(m, "ResourceLimit", error.ptr());
  py::register_exception<NoMinorization>(m, "NoMinorization", error.ptr());
  py::register_exception<InvalidResidual>(m, "InvalidResidual", error.ptr());
  py::register_exception<AllCensored>(m, "AllCensored", error.ptr());
  py::register_exception<NotConverged>(m, "NotConverged", error.ptr());

  py::class_<Dims>(m, "Dims")
      .def_readonly("nx", &Dims::nx)
      .def_readonly("ny", &Dims::ny)
      .def_readonly("nu", &Dims::nu)
      .def_readonly("nv", &Dims::nv)
      .def("__repr__", [](const Dims& d) {
        return "Dims(nx=" + std::to_string(d.nx) + ", ny=" + std::to_string(d.ny) +
               ", nu=" + std::to_string(d.nu) + ", nv=" + std::to_string(d.nv) + ")";
      });

  py::class_<GameModel>(m, "GameModel")
      .def_readonly("name", &GameModel::name)
      .def_readonly("dims", &GameModel::dims)
      .def_readonly("kernel", &GameModel::kernel)
      .def_readonly("cost", &GameModel::cost)
      .def_readonly("initial_belief", &GameModel::initial_belief)
      .def("p", &GameModel::p, py::arg("x"), py::arg("u"), py::arg("v"), py::arg("z"),
           py::arg("y"))
      .def("c", &GameModel::c, py::arg("x"), py::arg("u"), py::arg("v"))
      .def("c_max", &GameModel::CMax)
      .def("has_lyapunov", [](const GameModel& g) { return g.lyapunov.has_value(); })
      .def("__eq__", [](const GameModel& a, const GameModel& b) { return a == b; });

  m.def("canonical_model", &CanonicalModel, py::arg("name"));
  m.def("canonical_model_names", [] {
    std::vector<std::string> names;
    for (const GameModel& g : CanonicalModels()) names.push_back(g.name);
    return names;
  });
  m.def("parse_model", [](const std::string& text) { return ParseModel(text); }, py::arg("text"));
  m.def("serialize_model", &SerializeModel, py::arg("model"));
  m.def("load_model", &LoadModel, py::arg("path"));
  m.def("validate", [](const GameModel& g) {
    const ValidationReport r = Validate(g);
    py::dict out;
    out["ok"] = r.ok();
    out["strict_positive"] = r.strict_positive;
    out["c_max"] = r.c_max;
    py::list violations;
    for (const Violation& v : r.violations) {
      violations.append(py::make_tuple(v.where, v.magnitude, v.message));
    }
    out["violations"] = violations;
    return out;
  }, py::arg("model"));

  m.def("filter_update",
        [](const GameModel& g, const std::vector<double>& psi, int u, int v, int y) {
          const Belief b = FilterUpdate(g, Belief(psi), u, v, y);
          return std::vector<double>(b.probs().begin(), b.probs().end());
        },
        py::arg("model"), py::arg("psi"), py::arg("u"), py::arg("v"), py::arg("y"));
  m.def("stage_cost",
        [](const GameModel& g, const std::vector<double>& psi, int u, int v) {
          return StageCost(g, std::span<const double>(psi), u, v);
        },
        py::arg("model"), py::arg("psi"), py::arg("u"), py::arg("v"));

  m.def("solve_matrix_game", [](const std::vector<std::vector<double>>& rows) {
    if (rows.empty() || rows[0].empty()) throw std::invalid_argument("empty matrix");
    const int r = static_cast<int>(rows.size()), c = static_cast<int>(rows[0].size());
    std::vector<double> entries;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != c) throw std::invalid_argument("ragged matrix");
      entries.insert(entries.end(), row.begin(), row.end());
    }
    const GameSolution s = Solve(MatrixGame(r, c, std::move(entries)));
    return py::make_tuple(s.value, s.row.probs, s.col.probs);
  }, py::arg("matrix"), "Value, row (maximizer) strategy and column strategy.");

  py::class_<PySolution>(m, "DiscountedSolution")
      .def_property_readonly("values", [](const PySolution& s) { return s.solution.vi.table.values; })
      .def_property_readonly("alpha", [](const PySolution& s) { return s.solution.vi.table.alpha; })
      .def_property_readonly("iterations", [](const PySolution& s) { return s.solution.vi.iterations; })
      .def_property_readonly("residual", [](const PySolution& s) { return s.solution.vi.residual; })
      .def_property_readonly("grid_size", [](const PySolution& s) { return s.dynamics->size(); })
      .def("grid_point", [](const PySolution& s, std::size_t i) {
        const auto p = s.dynamics->grid()->probs(i);
        return std::vector<double>(p.begin(), p.end());
      }, py::arg("index"))
      .def("value_at", [](const PySolution& s, const std::vector<double>& psi) {
        return s.solution.vi.table.At(Belief(psi));
      }, py::arg("psi"))
      .def("strategies_at", [](const PySolution& s, const std::vector<double>& psi) {
        return py::make_tuple(s.table->RowAt(psi).probs, s.table->ColAt(psi).probs);
      }, py::arg("psi"));

  m.def("solve_discounted", &SolveDiscountedPy, py::arg("model"), py::arg("m") = 32,
        py::arg("alpha") = 0.9, py::arg("tol") = 1e-6, py::arg("max_iter") = 100000,
        py::arg("threads") = 1);
  m.def("default_alpha_schedule", &DefaultAlphaSchedule);
  m.def("run_vanishing_discount", &VanishingDiscountPy, py::arg("model"), py::arg("m") = 32,
        py::arg("alphas") = std::vector<double>{}, py::arg("psi_star") = std::vector<double>{},
        py::arg("tol") = 1e-6, py::arg("threads") = 1);

  py::enum_<Side>(m, "Side").value("PLAYER1", Side::kRow).value("PLAYER2", Side::kCol);

  py::class_<Strategy>(m, "Strategy")
      .def_static("uniform_random", &Strategy::UniformRandom, py::arg("side"), py::arg("n"))
      .def_static("fixed_mixed", [](Side side, const std::vector<double>& p) {
        return Strategy::FixedMixed(side, MixedAction{p});
      }, py::arg("side"), py::arg("probs"))
      .def_static("grid_table", [](Side side, const PySolution& s) {
        return Strategy::GridTable(side, s.table);
      }, py::arg("side"), py::arg("solution"))
      .def_static("myopic_greedy", [](Side side, const PySolution& s) {
        return Strategy::MyopicGreedy(side, s.table);
      }, py::arg("side"), py::arg("solution"))
      .def_property_readonly("name", &Strategy::name)
      .def_property_readonly("side", &Strategy::side);

  py::class_<RolloutResult>(m, "RolloutResult")
      .def_readonly("episodes", &RolloutResult::episodes)
      .def_readonly("horizon", &RolloutResult::horizon)
      .def_readonly("mean_avg_payoff", &RolloutResult::mean_avg_payoff)
      .def_readonly("std_error", &RolloutResult::std_error)
      .def_readonly("per_episode_averages", &RolloutResult::per_episode_averages)
      .def_readonly("belief_mean_avg_payoff", &RolloutResult::belief_mean_avg_payoff)
      .def_readonly("first_half_mean", &RolloutResult::first_half_mean)
      .def_readonly("second_half_mean", &RolloutResult::second_half_mean);

  m.def("simulate", [](const GameModel& g, const Strategy& s1, const Strategy& s2,
                       std::size_t episodes, std::int64_t horizon, std::uint64_t seed,
                       int threads) {
    py::gil_scoped_release release;
    return Simulate(g, s1, s2, {episodes, horizon, seed, threads});
  }, py::arg("model"), py::arg("s1"), py::arg("s2"), py::arg("episodes") = 200,
     py::arg("horizon") = 10000, py::arg("seed") = 0, py::arg("threads") = 1);

  m.def("payoff_equivalence_test", [](const GameModel& g, const Strategy& s1, const Strategy& s2,
                                      std::size_t episodes, std::int64_t horizon,
                                      std::uint64_t seed, int threads) {
    PayoffEquivalenceReport p;
    {
      py::gil_scoped_release release;
      p = PayoffEquivalenceTest(g, s1, s2, {episodes, horizon, seed, threads});
    }
    py::dict out;
    out["hidden_mean"] = p.hidden_mean;
    out["belief_mean"] = p.belief_mean;
    out["difference"] = p.difference;
    out["tolerance"] = p.tolerance;
    out["pass"] = p.pass;
    return out;
  }, py::arg("model"), py::arg("s1"), py::arg("s2"), py::arg("episodes") = 200,
     py::arg("horizon") = 10000, py::arg("seed") = 0, py::arg("threads") = 1);

  m.def("saddle_test", [](const GameModel& g, const PySolution& s, double gamma,
                          std::size_t episodes, std::int64_t horizon, std::uint64_t seed,
                          double budget, int threads) {
    SaddleReport r;
    {
      py::gil_scoped_release release;
      r = SaddleTest(g, s.table, gamma, DefaultAdversaryPool(g, s.table),
                     {episodes, horizon, seed, threads}, budget);
    }
    py::list rows;
    for (const SaddleComparison& c : r.comparisons) {
      py::dict row;
      row["adversary"] = c.adversary;
      row["side"] = c.side;
      row["mean"] = c.mean;
      row["std_error"] = c.std_error;
      row["bound"] = c.bound;
      row["pass"] = c.pass;
      rows.append(row);
    }
    return py::make_tuple(r.pass(), rows);
  }, py::arg("model"), py::arg("solution"), py::arg("gamma"), py::arg("episodes") = 200,
     py::arg("horizon") = 10000, py::arg("seed") = 0, py::arg("budget") = 0.05,
     py::arg("threads") = 1);

  m.def("compute_delta", [](const GameModel& g, const std::vector<int>& k) {
    return ComputeDelta(g, k);
  }, py::arg("model"), py::arg("small_set"));

  m.def("estimate_coupling_time",
        [](const GameModel& g, const std::vector<int>& k, const std::vector<double>& psi_hat,
           const std::vector<double>& psi_tilde, const Strategy& s1, const Strategy& s2,
           std::size_t n_samples, std::int64_t horizon_cap, std::uint64_t seed, int threads) {
          const SplitChainConfig cfg = MakeSplitChainConfig(g, k);
          CouplingTimeEstimate e;
          {
            py::gil_scoped_release release;
            e = EstimateCouplingTime(g, cfg, Belief(psi_hat), Belief(psi_tilde), s1, s2,
                                     {n_samples, horizon_cap, seed, threads});
          }
          py::dict out;
          out["delta"] = cfg.delta;
          out["mean"] = e.mean;
          out["ci_low"] = e.ci_low;
          out["ci_high"] = e.ci_high;
          out["censored"] = e.censored;
          out["taus"] = e.taus;
          return out;
        },
        py::arg("model"), py::arg("small_set"), py::arg("psi_hat"), py::arg("psi_tilde"),
        py::arg("s1"), py::arg("s2"), py::arg("n_samples") = 10000,
        py::arg("horizon_cap") = 1000000, py::arg("seed") = 0, py::arg("threads") = 1);

  m.def("validate_lyapunov",
        [](const GameModel& g, const std::vector<double>& V, const std::vector<double>& h,
           const std::vector<int>& K, double drift_c) {
          const LyapunovReport r = ValidateLyapunov(g, {V, h, K, drift_c});
          return py::make_tuple(r.ok(), r.worst_slack);
        },
        py::arg("model"), py::arg("V"), py::arg("h"), py::arg("K"), py::arg("drift_c"));
}
