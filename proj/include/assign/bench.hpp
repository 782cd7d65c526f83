// Copyright 2026 The assign Authors
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

// Timing sweep contrasting the cubic solver with factorial enumeration.

#ifndef ASSIGN_BENCH_HPP_
#define ASSIGN_BENCH_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "assign/model.hpp"
#include "assign/oracle.hpp"
#include "assign/solver.hpp"

namespace assign {

inline constexpr Weight kBenchWeightMin = 0;
inline constexpr Weight kBenchWeightMax = 1000;

enum class Algorithm { kUha, kBrute };

inline const char* to_string(Algorithm a) { return a == Algorithm::kUha ? "uha" : "brute"; }

// SplitMix64 finalizer; decorrelates (seed, size, trial) streams.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform integer in [lo, hi] by rejection on raw mt19937_64 output. Unlike
// std::uniform_int_distribution this is identical on every standard library.
inline std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t draw = 0;
  do {
    draw = rng();
  } while (draw >= limit);
  return lo + static_cast<std::int64_t>(draw % span);
}

inline Instance random_instance(Index n, std::uint64_t seed, Weight lo, Weight hi) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Weight>> w(n, std::vector<Weight>(n));
  for (auto& row : w) {
    for (auto& v : row) v = uniform_int(rng, lo, hi);
  }
  return new_instance(w);
}

// Instance for one (size, trial) cell of a sweep. Both algorithms see the same
// instances.
inline Instance bench_instance(std::uint64_t seed, Index n, int trial) {
  const std::uint64_t s =
      mix_seed(mix_seed(mix_seed(seed) ^ n) ^ static_cast<std::uint64_t>(trial));
  return random_instance(n, s, kBenchWeightMin, kBenchWeightMax);
}

struct BenchConfig {
  std::vector<Index> sizes;
  int trials = 1;
  std::uint64_t seed = 0;
  std::vector<Algorithm> algorithms{Algorithm::kUha};
};

struct BenchCell {
  Algorithm algorithm;
  Index size;
  double median_ms;
  std::vector<double> times_ms;
  std::vector<Weight> values;
};

struct BenchResult {
  BenchConfig config;
  std::vector<BenchCell> cells;  // ordered by (algorithm, size)
  std::optional<double> uha_slope;
  int compared = 0;
  int mismatches = 0;
};

inline double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t mid = xs.size() / 2;
  return xs.size() % 2 ? xs[mid] : 0.5 * (xs[mid - 1] + xs[mid]);
}

// Least-squares slope of log(y) against log(x).
inline std::optional<double> loglog_slope(const std::vector<double>& x,
                                          const std::vector<double>& y) {
  if (x.size() < 2 || x.size() != y.size()) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0 || y[i] <= 0) return std::nullopt;
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0) return std::nullopt;
  return sxy / sxx;
}

inline void validate(const BenchConfig& config) {
  if (config.trials < 1) throw Error("bench needs at least one trial");
  if (config.sizes.empty()) throw Error("bench needs at least one size");
  for (const Index n : config.sizes) {
    if (n < 1) throw Error("bench sizes must be positive");
  }
  const bool brute = std::find(config.algorithms.begin(), config.algorithms.end(),
                               Algorithm::kBrute) != config.algorithms.end();
  if (brute) {
    for (const Index n : config.sizes) {
      if (n > kBruteForceMaxSize) {
        throw OracleRefusal("brute force is limited to sizes <= " +
                            std::to_string(kBruteForceMaxSize) + "; got " + std::to_string(n));
      }
    }
  }
}

inline Weight run_algorithm(Algorithm a, const Instance& inst) {
  return a == Algorithm::kUha ? solve(inst).total_weight : brute_force_solve(inst).total_weight;
}

inline BenchResult run_bench(const BenchConfig& config) {
  validate(config);
  using Clock = std::chrono::steady_clock;
  BenchResult result{config, {}, std::nullopt, 0, 0};
  for (const Algorithm a : config.algorithms) {
    for (const Index n : config.sizes) {
      BenchCell cell{a, n, 0.0, {}, {}};
      run_algorithm(a, bench_instance(config.seed, n, 0));  // warm-up, discarded
      for (int trial = 0; trial < config.trials; ++trial) {
        const Instance inst = bench_instance(config.seed, n, trial);
        const auto start = Clock::now();
        const Weight value = run_algorithm(a, inst);
        const auto stop = Clock::now();
        cell.times_ms.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
        cell.values.push_back(value);
      }
      cell.median_ms = median(cell.times_ms);
      result.cells.push_back(std::move(cell));
    }
  }

  std::vector<double> xs, ys;
  for (const auto& cell : result.cells) {
    if (cell.algorithm != Algorithm::kUha) continue;
    xs.push_back(static_cast<double>(cell.size));
    ys.push_back(cell.median_ms);
  }
  result.uha_slope = loglog_slope(xs, ys);

  for (const auto& u : result.cells) {
    if (u.algorithm != Algorithm::kUha) continue;
    for (const auto& b : result.cells) {
      if (b.algorithm != Algorithm::kBrute || b.size != u.size) continue;
      for (std::size_t t = 0; t < u.values.size(); ++t) {
        ++result.compared;
        if (u.values[t] != b.values[t]) ++result.mismatches;
      }
    }
  }
  return result;
}

}  // namespace assign

#endif  // ASSIGN_BENCH_HPP_
