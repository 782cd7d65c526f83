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

// Exhaustive reference solver. Enumerates every permutation; only for
// verifying the real solver on small instances.

#ifndef ASSIGN_ORACLE_HPP_
#define ASSIGN_ORACLE_HPP_

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "assign/model.hpp"
#include "assign/solver.hpp"

namespace assign {

inline constexpr Index kBruteForceMaxSize = 10;
inline constexpr Index kEnumerateMaxSize = 8;

class OracleRefusal : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline Weight permutation_weight(const Instance& inst, const std::vector<Index>& perm) {
  Weight total = 0;
  for (Index i = 0; i < perm.size(); ++i) total += inst.weight(i, perm[i]);
  return total;
}

inline void guard_size(const Instance& inst, Index limit, const char* what) {
  if (inst.size() > limit) {
    throw OracleRefusal(std::string(what) + " refuses n = " + std::to_string(inst.size()) +
                        " (limit " + std::to_string(limit) + ")");
  }
}

}  // namespace detail

// Maximum over all n! permutations; ties go to the lexicographically smallest.
// The labeling is the initial one: feasible, but not a certificate.
inline Solution brute_force_solve(const Instance& inst) {
  detail::guard_size(inst, kBruteForceMaxSize, "brute_force_solve");
  std::vector<Index> perm(inst.size());
  std::iota(perm.begin(), perm.end(), Index{0});
  std::vector<Index> best = perm;
  Weight best_weight = detail::permutation_weight(inst, perm);
  while (std::next_permutation(perm.begin(), perm.end())) {
    const Weight w = detail::permutation_weight(inst, perm);
    if (w > best_weight) {
      best_weight = w;
      best = perm;
    }
  }
  Solution sol;
  sol.provenance = Provenance::kOracle;
  sol.matching = Matching::from_permutation(best);
  sol.labeling = initial_labeling(inst);
  sol.total_weight = best_weight;
  sol.reported_objective = reported_objective(inst, sol.matching);
  return sol;
}

// Every optimal permutation, in lexicographic order.
inline std::vector<std::vector<Index>> enumerate_optimal(const Instance& inst) {
  detail::guard_size(inst, kEnumerateMaxSize, "enumerate_optimal");
  std::vector<Index> perm(inst.size());
  std::iota(perm.begin(), perm.end(), Index{0});
  std::vector<std::vector<Index>> optimal;
  Weight best_weight = std::numeric_limits<Weight>::min();
  do {
    const Weight w = detail::permutation_weight(inst, perm);
    if (w > best_weight) {
      best_weight = w;
      optimal.clear();
    }
    if (w == best_weight) optimal.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return optimal;
}

}  // namespace assign

#endif  // ASSIGN_ORACLE_HPP_
