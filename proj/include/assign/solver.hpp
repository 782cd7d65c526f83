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

// Feasible-labeling augmenting-path solver for the assignment problem
// (Kuhn-Munkres / Hungarian method, maximization form).
//
// Outline:
//   1. Label every worker with its heaviest edge, every task with 0, and
//      greedily match tight edges whose endpoints are both free.
//   2. For each free worker (the root), grow an alternating tree (S, T) over
//      tight edges. On reaching a free task, flip the path and move on.
//   3. When every tight neighbour of S is already in T, shift labels by
//      delta = min slack over S x (Y \ T): S loses delta, T gains delta.
//      Tree edges stay tight and at least one new edge leaves S tight.
//
// Slacks are cached per task and updated on every S insertion and every
// label shift, so a phase costs O(n^2) and a full solve O(n^3).

#ifndef ASSIGN_SOLVER_HPP_
#define ASSIGN_SOLVER_HPP_

#include <cassert>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "assign/certificate.hpp"
#include "assign/model.hpp"

namespace assign {

// labels_x[i] = max_j w(i, j), labels_y = 0. Feasible by construction.
inline Labeling initial_labeling(const Instance& inst) {
  const Index n = inst.size();
  Labeling l{std::vector<Weight>(n), std::vector<Weight>(n, 0)};
  for (Index i = 0; i < n; ++i) {
    const auto row = inst.row(i);
    l.labels_x[i] = *std::max_element(row.begin(), row.end());
  }
  return l;
}

// Workers in ascending order take their first free task over a tight edge.
// A worker whose tight tasks are all taken stays unmatched.
inline Matching greedy_seed(const Instance& inst, const Labeling& l) {
  const Index n = inst.size();
  Matching m(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (!m.worker_of(j) && l.is_tight(inst, i, j)) {
        m.link(i, j);
        break;
      }
    }
  }
  return m;
}

struct PathFound {
  Index terminal_task;
};
// Every tight neighbour of S is in T; labels must move before growing on.
struct Stuck {};
using PhaseResult = std::variant<PathFound, Stuck>;

namespace detail {

inline void tree_add_worker(AlternatingTree& tree, const Instance& inst, const Labeling& l,
                            Index worker) {
  tree.in_s[worker] = 1;
  tree.s.push_back(worker);
  const auto row = inst.row(worker);
  const Weight lx = l.labels_x[worker];
  const Index n = inst.size();
  for (Index j = 0; j < n; ++j) {
    if (tree.in_t[j]) continue;
    const Weight slack = lx + l.labels_y[j] - row[j];
    if (slack < tree.slack[j]) {
      tree.slack[j] = slack;
      tree.slack_arg[j] = worker;
    }
  }
}

}  // namespace detail

inline AlternatingTree make_tree(const Instance& inst, const Labeling& l, const Matching& m,
                                 Index root) {
  const Index n = inst.size();
  if (root >= n || m.task_of(root)) {
    throw ContractViolation("alternating tree root " + std::to_string(root) +
                            " must be an unmatched worker");
  }
  AlternatingTree tree;
  tree.root = root;
  tree.in_s.assign(n, 0);
  tree.in_t.assign(n, 0);
  tree.parent_y.assign(n, AlternatingTree::kNone);
  tree.slack.assign(n, std::numeric_limits<Weight>::max());
  tree.slack_arg.assign(n, AlternatingTree::kNone);
  tree.s.reserve(n);
  tree.t.reserve(n);
  detail::tree_add_worker(tree, inst, l, root);
  return tree;
}

// Extends the tree along tight edges, lowest task index first, until a free
// task is reached or no tight edge leaves S towards Y \ T.
inline PhaseResult grow(AlternatingTree& tree, const Instance& inst, const Labeling& l,
                        const Matching& m) {
  const Index n = inst.size();
  for (;;) {
    Index next = AlternatingTree::kNone;
    for (Index j = 0; j < n; ++j) {
      if (!tree.in_t[j] && tree.slack[j] == 0) {
        next = j;
        break;
      }
    }
    if (next == AlternatingTree::kNone) return Stuck{};
    tree.in_t[next] = 1;
    tree.t.push_back(next);
    tree.parent_y[next] = tree.slack_arg[next];
    const auto partner = m.worker_of(next);
    if (!partner) return PathFound{next};
    detail::tree_add_worker(tree, inst, l, *partner);
  }
}

// Label shift on a stuck tree using the cached slacks. Returns delta.
inline Weight improve(AlternatingTree& tree, Labeling& l) {
  const Index n = tree.slack.size();
  Weight delta = std::numeric_limits<Weight>::max();
  for (Index j = 0; j < n; ++j) {
    if (!tree.in_t[j] && tree.slack[j] < delta) delta = tree.slack[j];
  }
  if (delta <= 0 || delta == std::numeric_limits<Weight>::max()) {
    throw ContractViolation("label improvement with non-positive delta " +
                            std::to_string(delta));
  }
  for (const Index x : tree.s) l.labels_x[x] -= delta;
  for (const Index y : tree.t) l.labels_y[y] += delta;
  for (Index j = 0; j < n; ++j) {
    if (!tree.in_t[j]) tree.slack[j] -= delta;
  }
  return delta;
}

// Alternating path from the root to `terminal_task`, as vertex indices
// [root, y, x, y, ..., x, terminal_task]. Even positions are workers, odd
// positions are tasks.
inline std::vector<Index> augmenting_path(const AlternatingTree& tree, const Matching& m,
                                          Index terminal_task) {
  std::vector<Index> reversed;
  Index task = terminal_task;
  for (;;) {
    const Index worker = tree.parent_y[task];
    if (worker == AlternatingTree::kNone) {
      throw ContractViolation("task " + std::to_string(task) + " has no tree parent");
    }
    reversed.push_back(task);
    reversed.push_back(worker);
    if (worker == tree.root) break;
    task = m.task_of(worker).value();
  }
  return {reversed.rbegin(), reversed.rend()};
}

struct GrowResult {
  PhaseResult result;
  AlternatingTree tree;
  std::vector<Index> path;  // empty unless result is PathFound
};

// Fresh tree from `root` grown as far as the current labels allow.
inline GrowResult grow_tree(const Instance& inst, const Labeling& l, const Matching& m,
                            Index root) {
  GrowResult out{Stuck{}, make_tree(inst, l, m, root), {}};
  out.result = grow(out.tree, inst, l, m);
  if (const auto* found = std::get_if<PathFound>(&out.result)) {
    out.path = augmenting_path(out.tree, m, found->terminal_task);
  }
  return out;
}

// Label shift computed by a full scan over S x (Y \ T). Used where no tree
// cache exists; `solve` uses improve() on its tree instead.
inline std::pair<Labeling, Weight> improve_labeling(const Labeling& l, std::span<const Index> s,
                                                    std::span<const Index> t,
                                                    const Instance& inst) {
  const Index n = inst.size();
  if (s.empty()) throw ContractViolation("improve_labeling: S is empty");
  std::vector<char> in_s(n, 0), in_t(n, 0);
  for (const Index x : s) in_s.at(x) = 1;
  for (const Index y : t) in_t.at(y) = 1;
  Weight delta = std::numeric_limits<Weight>::max();
  for (const Index x : s) {
    for (Index y = 0; y < n; ++y) {
      if (!in_t[y]) delta = std::min(delta, l.slack(inst, x, y));
    }
  }
  if (delta <= 0 || delta == std::numeric_limits<Weight>::max()) {
    throw ContractViolation("improve_labeling: delta " + std::to_string(delta) +
                            " is not positive; S has a tight edge leaving T");
  }
  Labeling next = l;
  for (Index x = 0; x < n; ++x) {
    if (in_s[x]) next.labels_x[x] -= delta;
  }
  for (Index y = 0; y < n; ++y) {
    if (in_t[y]) next.labels_y[y] += delta;
  }
  return {std::move(next), delta};
}

// Flips `path` in place: matched edges along it leave M, the others join.
inline void augment_in_place(Matching& m, std::span<const Index> path) {
  const Index n = m.n();
  if (path.size() < 2 || path.size() % 2 != 0) {
    throw ContractViolation("augmenting path must have an odd number of edges");
  }
  std::vector<char> seen_x(n, 0), seen_y(n, 0);
  for (Index k = 0; k < path.size(); ++k) {
    auto& seen = (k % 2 == 0) ? seen_x : seen_y;
    if (path[k] >= n || seen[path[k]]) {
      throw ContractViolation("augmenting path repeats or overruns a vertex");
    }
    seen[path[k]] = 1;
  }
  if (m.task_of(path.front()) || m.worker_of(path.back())) {
    throw ContractViolation("augmenting path endpoints must be unmatched");
  }
  for (Index k = 1; k + 1 < path.size(); k += 2) {
    if (m.worker_of(path[k]) != path[k + 1]) {
      throw ContractViolation("augmenting path does not alternate with the matching");
    }
  }
  for (Index k = 2; k < path.size(); k += 2) m.unlink_worker(path[k]);
  for (Index k = 0; k < path.size(); k += 2) m.link(path[k], path[k + 1]);
}

inline Matching augment(Matching m, std::span<const Index> path) {
  augment_in_place(m, path);
  return m;
}

enum class SolveEventKind { kLabelUpdate, kAugment };

struct SolveEvent {
  SolveEventKind kind;
  const Instance& instance;
  const Labeling& labeling;
  const Matching& matching;
  Weight delta;  // 0 for kAugment
};

struct SolveOptions {
  bool greedy_seed = true;
  // Called after every label shift and every augmentation.
  std::function<void(const SolveEvent&)> observer;
};

inline Solution solve(const Instance& inst, const SolveOptions& options = {}) {
  const Index n = inst.size();
  Solution sol;
  sol.provenance = Provenance::kSolver;
  sol.labeling = initial_labeling(inst);
  sol.matching = options.greedy_seed ? greedy_seed(inst, sol.labeling) : Matching(n);
  Labeling& l = sol.labeling;
  Matching& m = sol.matching;

  for (Index root = 0; root < n; ++root) {
    if (m.task_of(root)) continue;
    ++sol.phases;
    AlternatingTree tree = make_tree(inst, l, m, root);
    for (;;) {
      const PhaseResult result = grow(tree, inst, l, m);
      if (const auto* found = std::get_if<PathFound>(&result)) {
        augment_in_place(m, augmenting_path(tree, m, found->terminal_task));
        if (options.observer) {
          options.observer({SolveEventKind::kAugment, inst, l, m, 0});
        }
        break;
      }
      const Weight delta = improve(tree, l);
      ++sol.label_improvements;
      assert(check_feasible(inst, l));
      if (options.observer) {
        options.observer({SolveEventKind::kLabelUpdate, inst, l, m, delta});
      }
    }
  }

  sol.total_weight = m.weight(inst);
  sol.reported_objective = reported_objective(inst, m);
  if (sol.total_weight != l.total()) {
    throw ContractViolation("duality gap at termination: w(M) = " +
                            std::to_string(sol.total_weight) +
                            ", sum of labels = " + std::to_string(l.total()));
  }
  return sol;
}

}  // namespace assign

#endif  // ASSIGN_SOLVER_HPP_
