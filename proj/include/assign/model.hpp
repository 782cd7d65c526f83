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

// Domain types shared by the solver, the brute-force oracle, the certificate
// checker and the ingestion layer. Vertices are dense indices 0..n-1 on each
// side: X holds workers (rows), Y holds tasks (columns).

#ifndef ASSIGN_MODEL_HPP_
#define ASSIGN_MODEL_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace assign {

using Weight = std::int64_t;
using Index = std::size_t;

// Base class of every recoverable error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a documented precondition is violated by the caller, or when an
// internal invariant is found broken. Not meant to be caught in normal flow.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

enum class InstanceErrorKind { kEmpty, kRagged, kNonSquare, kWeightOverflow, kBadDummyIndex };

class InstanceError : public Error {
 public:
  InstanceError(InstanceErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}
  InstanceErrorKind kind() const { return kind_; }

 private:
  InstanceErrorKind kind_;
};

enum class Objective { kMaximize, kMinimize };

inline const char* to_string(Objective objective) {
  return objective == Objective::kMaximize ? "max" : "min";
}

// Largest admissible |w| for a side size n. Sums of n weights and all label
// arithmetic then stay well inside the int64 range.
inline Weight weight_bound(Index n) {
  return static_cast<Weight>((std::uint64_t{1} << 62) / std::max<Index>(n, 1));
}

// Complete bipartite graph K_{n,n} with integer edge weights, always in
// maximization form. `objective` only records the sense the user asked for.
class Instance {
 public:
  Index size() const { return n_; }
  Weight weight(Index worker, Index task) const { return weights_[worker * n_ + task]; }
  std::span<const Weight> row(Index worker) const {
    return {weights_.data() + worker * n_, n_};
  }
  std::span<const Weight> weights() const { return weights_; }
  Objective objective() const { return objective_; }

  // Vertices introduced by padding a rectangular problem. Sorted, unique.
  const std::vector<Index>& dummy_rows() const { return dummy_rows_; }
  const std::vector<Index>& dummy_cols() const { return dummy_cols_; }
  bool is_dummy_row(Index worker) const {
    return std::binary_search(dummy_rows_.begin(), dummy_rows_.end(), worker);
  }
  bool is_dummy_col(Index task) const {
    return std::binary_search(dummy_cols_.begin(), dummy_cols_.end(), task);
  }

  friend Instance new_instance(const std::vector<std::vector<Weight>>& weights,
                               Objective objective, std::vector<Index> dummy_rows,
                               std::vector<Index> dummy_cols);

 private:
  Instance() = default;

  Index n_ = 0;
  std::vector<Weight> weights_;
  Objective objective_ = Objective::kMaximize;
  std::vector<Index> dummy_rows_;
  std::vector<Index> dummy_cols_;
};

namespace detail {

inline void normalize_dummies(std::vector<Index>& dummies, Index n, const char* side) {
  std::sort(dummies.begin(), dummies.end());
  dummies.erase(std::unique(dummies.begin(), dummies.end()), dummies.end());
  if (!dummies.empty() && dummies.back() >= n) {
    throw InstanceError(InstanceErrorKind::kBadDummyIndex,
                        std::string("dummy ") + side + " index " +
                            std::to_string(dummies.back()) + " out of range");
  }
}

}  // namespace detail

// Validates and builds an instance. Rectangular input is rejected here;
// padding is the ingestion layer's job.
inline Instance new_instance(const std::vector<std::vector<Weight>>& weights,
                             Objective objective, std::vector<Index> dummy_rows,
                             std::vector<Index> dummy_cols) {
  if (weights.empty() || weights.front().empty()) {
    throw InstanceError(InstanceErrorKind::kEmpty, "weight matrix is empty");
  }
  const Index rows = weights.size();
  const Index cols = weights.front().size();
  for (Index i = 0; i < rows; ++i) {
    if (weights[i].size() != cols) {
      throw InstanceError(InstanceErrorKind::kRagged,
                          "row " + std::to_string(i) + " has " +
                              std::to_string(weights[i].size()) + " entries, expected " +
                              std::to_string(cols));
    }
  }
  if (rows != cols) {
    throw InstanceError(InstanceErrorKind::kNonSquare,
                        "weight matrix is " + std::to_string(rows) + "x" +
                            std::to_string(cols) + ", expected square");
  }
  const Weight bound = weight_bound(rows);
  Instance inst;
  inst.n_ = rows;
  inst.objective_ = objective;
  inst.weights_.reserve(rows * cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      const Weight w = weights[i][j];
      if (w > bound || w < -bound) {
        throw InstanceError(InstanceErrorKind::kWeightOverflow,
                            "weight at (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") exceeds the magnitude bound " + std::to_string(bound));
      }
      inst.weights_.push_back(w);
    }
  }
  detail::normalize_dummies(dummy_rows, rows, "row");
  detail::normalize_dummies(dummy_cols, cols, "column");
  inst.dummy_rows_ = std::move(dummy_rows);
  inst.dummy_cols_ = std::move(dummy_cols);
  return inst;
}

inline Instance new_instance(const std::vector<std::vector<Weight>>& weights,
                             Objective objective = Objective::kMaximize) {
  return new_instance(weights, objective, {}, {});
}

// Dual values l(x), l(y). Feasible for an instance when
// l(x_i) + l(y_j) >= w(x_i, y_j) for every pair; see certificate.hpp.
struct Labeling {
  std::vector<Weight> labels_x;
  std::vector<Weight> labels_y;

  Weight total() const {
    return std::accumulate(labels_x.begin(), labels_x.end(), Weight{0}) +
           std::accumulate(labels_y.begin(), labels_y.end(), Weight{0});
  }
  // Reduced cost of the edge (x_i, y_j).
  Weight slack(const Instance& inst, Index worker, Index task) const {
    return labels_x[worker] + labels_y[task] - inst.weight(worker, task);
  }
  bool is_tight(const Instance& inst, Index worker, Index task) const {
    return slack(inst, worker, task) == 0;
  }

  friend bool operator==(const Labeling&, const Labeling&) = default;
};

// A set of vertex-disjoint (worker, task) pairs, stored as two mutually
// inverse partner maps. The mutators keep the maps consistent.
class Matching {
 public:
  Matching() = default;
  explicit Matching(Index n) : match_x_(n), match_y_(n) {}

  // Perfect matching worker i -> tasks[i]. `tasks` must be a permutation.
  static Matching from_permutation(std::span<const Index> tasks) {
    Matching m(tasks.size());
    for (Index i = 0; i < tasks.size(); ++i) m.link(i, tasks[i]);
    return m;
  }

  Index n() const { return match_x_.size(); }
  std::optional<Index> task_of(Index worker) const { return match_x_[worker]; }
  std::optional<Index> worker_of(Index task) const { return match_y_[task]; }
  const std::vector<std::optional<Index>>& match_x() const { return match_x_; }
  const std::vector<std::optional<Index>>& match_y() const { return match_y_; }

  Index size() const {
    return static_cast<Index>(std::count_if(match_x_.begin(), match_x_.end(),
                                            [](const auto& t) { return t.has_value(); }));
  }

  void link(Index worker, Index task) {
    if (worker >= n() || task >= n()) throw ContractViolation("link: index out of range");
    if (match_x_[worker] || match_y_[task]) {
      throw ContractViolation("link: worker " + std::to_string(worker) + " or task " +
                              std::to_string(task) + " already matched");
    }
    match_x_[worker] = task;
    match_y_[task] = worker;
  }

  void unlink_worker(Index worker) {
    if (const auto task = match_x_[worker]) {
      match_y_[*task].reset();
      match_x_[worker].reset();
    }
  }

  // Both maps are mutual inverses and every partner index is in range.
  bool is_consistent() const {
    if (match_x_.size() != match_y_.size()) return false;
    const Index n = match_x_.size();
    for (Index i = 0; i < n; ++i) {
      if (const auto j = match_x_[i]; j && (*j >= n || match_y_[*j] != i)) return false;
    }
    for (Index j = 0; j < n; ++j) {
      if (const auto i = match_y_[j]; i && (*i >= n || match_x_[*i] != j)) return false;
    }
    return true;
  }

  // Task per worker; only meaningful for perfect matchings.
  std::vector<Index> permutation() const {
    std::vector<Index> perm(n());
    for (Index i = 0; i < n(); ++i) perm[i] = match_x_[i].value();
    return perm;
  }

  Weight weight(const Instance& inst) const {
    Weight total = 0;
    for (Index i = 0; i < n(); ++i) {
      if (match_x_[i]) total += inst.weight(i, *match_x_[i]);
    }
    return total;
  }

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<std::optional<Index>> match_x_;
  std::vector<std::optional<Index>> match_y_;
};

inline bool is_perfect(const Matching& m, Index n) {
  if (m.n() != n || !m.is_consistent()) return false;
  return std::all_of(m.match_x().begin(), m.match_x().end(),
                     [](const auto& t) { return t.has_value(); });
}

// Search state of one phase: workers S and tasks T reached from `root` along
// tight edges, plus a per-task cache of the minimum slack over S.
struct AlternatingTree {
  static constexpr Index kNone = std::numeric_limits<Index>::max();

  Index root = kNone;
  std::vector<Index> s;  // in insertion order, s.front() == root
  std::vector<Index> t;  // in insertion order
  std::vector<char> in_s;
  std::vector<char> in_t;
  std::vector<Index> parent_y;   // parent_y[j]: worker in S that reached y_j
  std::vector<Weight> slack;     // min over x in S of l(x) + l(y_j) - w(x, y_j)
  std::vector<Index> slack_arg;  // the x attaining slack[j]
};

enum class Provenance { kSolver, kOracle };

struct Solution {
  Matching matching;
  Labeling labeling;
  Weight total_weight = 0;        // canonical (maximize) sense
  Weight reported_objective = 0;  // user sense, dummy pairs excluded
  std::int64_t phases = 0;
  std::int64_t label_improvements = 0;
  Provenance provenance = Provenance::kSolver;
};

// Value of a perfect matching in the user's objective sense, excluding pairs
// that touch a padding vertex.
inline Weight reported_objective(const Instance& inst, const Matching& m) {
  Weight total = 0;
  for (Index i = 0; i < m.n(); ++i) {
    const auto j = m.task_of(i);
    if (!j || inst.is_dummy_row(i) || inst.is_dummy_col(*j)) continue;
    total += inst.weight(i, *j);
  }
  return inst.objective() == Objective::kMinimize ? -total : total;
}

}  // namespace assign

#endif  // ASSIGN_MODEL_HPP_
