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

#include "posglab/model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace posglab {

double GameModel::PMarg(int x, int u, int v, int z) const {
  double s = 0.0;
  for (int y = 0; y < dims.ny; ++y) s += p(x, u, v, z, y);
  return s;
}

double GameModel::CMax() const {
  double m = 0.0;
  for (double c : cost) m = std::max(m, std::abs(c));
  return m;
}

bool GameModel::StrictlyPositive() const {
  return !kernel.empty() &&
         std::all_of(kernel.begin(), kernel.end(), [](double p) { return p > 0.0; });
}

std::string ValidationReport::ToString() const {
  std::ostringstream os;
  os.precision(12);
  if (violations.empty()) {
    os << "ok";
  } else {
    os << violations.size() << " violation(s)";
  }
  os << "; strict_positive=" << (strict_positive ? "true" : "false")
     << "; c_max=" << c_max << "\n";
  for (const Violation& v : violations) {
    os << "  " << v.where << ": " << v.message << "\n";
  }
  return os.str();
}

namespace {

std::string Fmt(double value) {
  std::ostringstream os;
  os.precision(12);
  os << value;
  return os.str();
}

std::string Where(int x, int u, int v) {
  std::ostringstream os;
  os << "(x=" << x << ",u=" << u << ",v=" << v << ")";
  return os.str();
}

void CheckLyapunov(const GameModel& model, ValidationReport& report) {
  const LyapunovCert& cert = *model.lyapunov;
  const auto nx = static_cast<std::size_t>(model.dims.nx);
  auto add = [&](std::string where, double magnitude, std::string message) {
    report.violations.push_back({std::move(where), magnitude, std::move(message)});
  };
  if (cert.V.size() != nx) add("lyapunov.V", cert.V.size(), "length differs from num_states");
  if (cert.h.size() != nx) add("lyapunov.h", cert.h.size(), "length differs from num_states");
  for (std::size_t x = 0; x < cert.V.size(); ++x) {
    if (!std::isfinite(cert.V[x])) add("lyapunov.V[" + std::to_string(x) + "]", 0, "not finite");
  }
  for (std::size_t x = 0; x < cert.h.size(); ++x) {
    if (!(cert.h[x] >= 1.0)) {
      add("lyapunov.h[" + std::to_string(x) + "]", cert.h[x], "h must be >= 1, got " + Fmt(cert.h[x]));
    }
  }
  if (cert.K.empty()) add("lyapunov.K", 0, "small set K is empty");
  for (int k : cert.K) {
    if (k < 0 || k >= model.dims.nx) add("lyapunov.K", k, "index " + std::to_string(k) + " out of range");
  }
  if (!(cert.drift_c >= 0.0) || !std::isfinite(cert.drift_c)) {
    add("lyapunov.drift_c", cert.drift_c, "drift constant must be finite and >= 0");
  }
}

}  // namespace

ValidationReport Validate(const GameModel& model) {
  ValidationReport report;
  const Dims& d = model.dims;
  auto add = [&](std::string where, double magnitude, std::string message) {
    report.violations.push_back({std::move(where), magnitude, std::move(message)});
  };

  if (d.nx <= 0 || d.ny <= 0 || d.nu <= 0 || d.nv <= 0) {
    add("dims", 0, "all cardinalities must be positive");
    return report;
  }
  const std::size_t kernel_size = static_cast<std::size_t>(d.nx) * d.nu * d.nv * d.nx * d.ny;
  const std::size_t cost_size = static_cast<std::size_t>(d.nx) * d.nu * d.nv;
  if (model.kernel.size() != kernel_size) {
    add("kernel", model.kernel.size(), "expected " + std::to_string(kernel_size) + " entries");
  }
  if (model.cost.size() != cost_size) {
    add("cost", model.cost.size(), "expected " + std::to_string(cost_size) + " entries");
  }
  if (model.initial_belief.size() != static_cast<std::size_t>(d.nx)) {
    add("initial_belief", model.initial_belief.size(), "length differs from num_states");
  }
  if (!report.ok()) return report;

  report.strict_positive = true;
  for (int x = 0; x < d.nx; ++x) {
    for (int u = 0; u < d.nu; ++u) {
      for (int v = 0; v < d.nv; ++v) {
        double sum = 0.0;
        for (int z = 0; z < d.nx; ++z) {
          for (int y = 0; y < d.ny; ++y) {
            const double p = model.p(x, u, v, z, y);
            if (!std::isfinite(p) || p < 0.0) {
              std::ostringstream where;
              where << "kernel[" << x << "][" << u << "][" << v << "][" << z << "][" << y << "]";
              add(where.str(), p, "entry " + Fmt(p) + " is negative or not finite");
            }
            if (!(p > 0.0)) report.strict_positive = false;
            sum += p;
          }
        }
        if (!(std::abs(sum - 1.0) <= kStochasticTolerance)) {
          add("kernel" + Where(x, u, v), std::abs(sum - 1.0),
              "row " + Where(x, u, v) + " sums to " + Fmt(sum));
        }
        const double c = model.c(x, u, v);
        if (!std::isfinite(c)) add("cost" + Where(x, u, v), 0, "cost is not finite");
      }
    }
  }

  double belief_sum = 0.0;
  for (int x = 0; x < d.nx; ++x) {
    const double b = model.initial_belief[x];
    if (!std::isfinite(b) || b < 0.0) {
      add("initial_belief[" + std::to_string(x) + "]", b, "entry " + Fmt(b) + " is negative or not finite");
    }
    belief_sum += b;
  }
  if (!(std::abs(belief_sum - 1.0) <= kStochasticTolerance)) {
    add("initial_belief", std::abs(belief_sum - 1.0), "sums to " + Fmt(belief_sum));
  }
  if (model.lyapunov) CheckLyapunov(model, report);

  report.c_max = model.CMax();
  return report;
}

namespace {

// Divides `row` by its sum unless the sum is already one up to the rounding
// error a sum of this length can accumulate.
void NormalizeRow(double* row, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += row[i];
  const double rounding = 4.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon();
  if (sum <= 0.0 || std::abs(sum - 1.0) <= rounding) return;
  for (std::size_t i = 0; i < n; ++i) row[i] /= sum;
}

}  // namespace

void NormalizeInPlace(GameModel& model) {
  const std::size_t row = static_cast<std::size_t>(model.dims.nx) * model.dims.ny;
  if (row == 0) return;
  for (std::size_t start = 0; start + row <= model.kernel.size(); start += row) {
    NormalizeRow(model.kernel.data() + start, row);
  }
  NormalizeRow(model.initial_belief.data(), model.initial_belief.size());
}

GameModel MakeFactoredModel(std::string name, int nu, int nv,
                            const std::vector<double>& transition,
                            const std::vector<std::vector<double>>& observation,
                            std::vector<double> cost,
                            std::vector<double> initial_belief) {
  GameModel m;
  m.name = std::move(name);
  const int nx = static_cast<int>(observation.size());
  const int ny = nx > 0 ? static_cast<int>(observation[0].size()) : 0;
  m.dims = {nx, ny, nu, nv};
  if (transition.size() != static_cast<std::size_t>(nx) * nu * nv * nx) {
    throw std::invalid_argument("MakeFactoredModel: transition has wrong size");
  }
  m.kernel.assign(static_cast<std::size_t>(nx) * nu * nv * nx * ny, 0.0);
  for (int x = 0; x < nx; ++x)
    for (int u = 0; u < nu; ++u)
      for (int v = 0; v < nv; ++v)
        for (int z = 0; z < nx; ++z)
          for (int y = 0; y < ny; ++y)
            m.kernel[m.KernelIndex(x, u, v, z, y)] =
                transition[((static_cast<std::size_t>(x) * nu + u) * nv + v) * nx + z] *
                observation[z][y];
  m.cost = std::move(cost);
  m.initial_belief = std::move(initial_belief);
  return m;
}

namespace {

// Repeats an action-independent nx-by-nx transition matrix over (u, v).
std::vector<double> Replicate(const std::vector<std::vector<double>>& P, int nu, int nv) {
  const int nx = static_cast<int>(P.size());
  std::vector<double> t;
  for (int x = 0; x < nx; ++x)
    for (int u = 0; u < nu; ++u)
      for (int v = 0; v < nv; ++v)
        for (int z = 0; z < nx; ++z) t.push_back(P[x][z]);
  return t;
}

std::vector<double> StateIndependentCost(int nx, const std::vector<std::vector<double>>& g) {
  std::vector<double> c;
  for (int x = 0; x < nx; ++x)
    for (const auto& row : g)
      for (double e : row) c.push_back(e);
  return c;
}

GameModel Canon2() {
  const std::vector<std::vector<double>> P = {{0.8, 0.2}, {0.3, 0.7}};
  const std::vector<std::vector<double>> Q = {{0.9, 0.1}, {0.2, 0.8}};
  return MakeFactoredModel("CANON2", 2, 2, Replicate(P, 2, 2), Q,
                           StateIndependentCost(2, {{1, -1}, {-1, 1}}), {0.5, 0.5});
}

GameModel Separable2() {
  GameModel m = Canon2();
  m.name = "SEPARABLE2";
  m.cost = StateIndependentCost(2, {{3, 1}, {0, 2}});
  return m;
}

GameModel FullObs3() {
  // From x the chain advances to x+1 (mod 3) with probability a[u][v] and
  // stays otherwise; y = z.
  const double a[2][2] = {{0.7, 0.2}, {0.5, 0.9}};
  std::vector<double> t;
  for (int x = 0; x < 3; ++x)
    for (int u = 0; u < 2; ++u)
      for (int v = 0; v < 2; ++v)
        for (int z = 0; z < 3; ++z)
          t.push_back(z == x ? 1.0 - a[u][v] : (z == (x + 1) % 3 ? a[u][v] : 0.0));
  const std::vector<std::vector<double>> identity = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  std::vector<double> cost = {1, 0, 0, 1,    //
                              3, -1, 0, 2,   //
                              -2, 1, 2, 0};
  return MakeFactoredModel("FULLOBS3", 2, 2, t, identity, std::move(cost),
                           {1.0 / 3, 1.0 / 3, 1.0 / 3});
}

GameModel Unctrl2() {
  const std::vector<std::vector<double>> P = {{0.9, 0.1}, {0.2, 0.8}};
  const std::vector<std::vector<double>> Q = {{0.7, 0.3}, {0.4, 0.6}};
  return MakeFactoredModel("UNCTRL2", 1, 1, Replicate(P, 1, 1), Q, {2.0, -1.0}, {0.5, 0.5});
}

GameModel Inspect2() {
  std::vector<double> t;
  for (int x = 0; x < 2; ++x)
    for (int u = 0; u < 2; ++u)
      for (int v = 0; v < 2; ++v) {
        const double stay = (u == v) ? 0.85 : 0.55;
        for (int z = 0; z < 2; ++z) t.push_back(z == x ? stay : 1.0 - stay);
      }
  const std::vector<std::vector<double>> Q = {{0.85, 0.15}, {0.25, 0.75}};
  std::vector<double> cost = {2, 0, -1, 1,  //
                              -1, 1, 2, -2};
  GameModel m = MakeFactoredModel("INSPECT2", 2, 2, t, Q, std::move(cost), {0.5, 0.5});
  m.lyapunov = LyapunovCert{{0.0, 0.0}, {1.0, 1.0}, {0, 1}, 1.0};
  return m;
}

GameModel Single1() {
  return MakeFactoredModel("SINGLE1", 1, 1, {1.0}, {{1.0}}, {0.5}, {1.0});
}

}  // namespace

std::vector<GameModel> CanonicalModels() {
  return {Canon2(), Separable2(), FullObs3(), Unctrl2(), Inspect2(), Single1()};
}

GameModel CanonicalModel(const std::string& name) {
  for (GameModel& m : CanonicalModels()) {
    if (m.name == name) return m;
  }
  throw std::out_of_range("unknown built-in model: " + name);
}

}  // namespace posglab
