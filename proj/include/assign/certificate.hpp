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

// Optimality certificates. A perfect matching M together with a feasible
// labeling l that is tight on every edge of M proves M optimal: any perfect
// matching M' satisfies w(M') <= sum_v l(v) = w(M). No re-solve is needed.

#ifndef ASSIGN_CERTIFICATE_HPP_
#define ASSIGN_CERTIFICATE_HPP_

#include <string>

#include "assign/model.hpp"

namespace assign {

enum class Verdict {
  kOptimal,
  kNotPerfect,
  kInfeasibleLabels,
  kSlackEdgeInMatching,
  kWeightMismatch,
};

inline const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kOptimal: return "optimal";
    case Verdict::kNotPerfect: return "not_perfect";
    case Verdict::kInfeasibleLabels: return "infeasible_labels";
    case Verdict::kSlackEdgeInMatching: return "slack_edge_in_matching";
    case Verdict::kWeightMismatch: return "weight_mismatch";
  }
  return "unknown";
}

namespace detail {

inline void check_labeling_dims(const Instance& inst, const Labeling& l) {
  if (l.labels_x.size() != inst.size() || l.labels_y.size() != inst.size()) {
    throw DimensionMismatch("labeling has " + std::to_string(l.labels_x.size()) + "+" +
                            std::to_string(l.labels_y.size()) + " labels, instance side is " +
                            std::to_string(inst.size()));
  }
}

}  // namespace detail

// True iff l(x_i) + l(y_j) >= w(x_i, y_j) for all n^2 pairs.
inline bool check_feasible(const Instance& inst, const Labeling& l) {
  detail::check_labeling_dims(inst, l);
  const Index n = inst.size();
  for (Index i = 0; i < n; ++i) {
    const auto row = inst.row(i);
    const Weight lx = l.labels_x[i];
    for (Index j = 0; j < n; ++j) {
      if (lx + l.labels_y[j] < row[j]) return false;
    }
  }
  return true;
}

// Checks, in this order: perfection of the matching, feasibility of the
// labels, tightness of every matched edge, and total_weight == sum of labels.
// The first failing check names the verdict.
inline Verdict check_optimal(const Instance& inst, const Solution& sol) {
  detail::check_labeling_dims(inst, sol.labeling);
  if (sol.matching.n() != inst.size()) {
    throw DimensionMismatch("matching side " + std::to_string(sol.matching.n()) +
                            " != instance side " + std::to_string(inst.size()));
  }
  if (!is_perfect(sol.matching, inst.size())) return Verdict::kNotPerfect;
  if (!check_feasible(inst, sol.labeling)) return Verdict::kInfeasibleLabels;
  for (Index i = 0; i < inst.size(); ++i) {
    if (!sol.labeling.is_tight(inst, i, *sol.matching.task_of(i))) {
      return Verdict::kSlackEdgeInMatching;
    }
  }
  if (sol.total_weight != sol.labeling.total()) return Verdict::kWeightMismatch;
  return Verdict::kOptimal;
}

}  // namespace assign

#endif  // ASSIGN_CERTIFICATE_HPP_
