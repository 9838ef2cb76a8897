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

#ifndef POSGLAB_RNG_H_
#define POSGLAB_RNG_H_

#include <cstdint>
#include <random>
#include <span>

namespace posglab {

// SplitMix64 finalizer; a bijective mix of a 64-bit counter.
constexpr std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Random stream for one sample path. Streams are keyed by (master seed,
// path index), so any path can be regenerated on its own and results do not
// depend on which thread ran which path.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng ForPath(std::uint64_t master_seed, std::uint64_t path_index) {
    return Rng(SplitMix64(SplitMix64(master_seed) ^ SplitMix64(~path_index)));
  }

  std::uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits; identical on every platform.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Index drawn from unnormalized nonnegative weights.
  int Categorical(std::span<const double> weights);

  // Uniform integer in [0, n).
  int UniformInt(int n) { return static_cast<int>(Uniform() * n); }

  bool Bernoulli(double p) { return Uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

inline int Rng::Categorical(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  double target = Uniform() * total;
  int last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last_positive = static_cast<int>(i);
    if (target < weights[i]) return static_cast<int>(i);
    target -= weights[i];
  }
  return last_positive;
}

}  // namespace posglab

#endif  // POSGLAB_RNG_H_
