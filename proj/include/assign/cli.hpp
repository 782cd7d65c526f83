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

// The `assign` command line: solve, verify and bench subcommands. Kept in a
// header so tests can drive it in-process with string streams.
//
// Exit codes: 0 ok, 1 input error, 2 infeasible, 3 internal certificate
// failure, 4 verification failed.

#ifndef ASSIGN_CLI_HPP_
#define ASSIGN_CLI_HPP_

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "assign/bench.hpp"
#include "assign/certificate.hpp"
#include "assign/ingest.hpp"
#include "assign/model.hpp"
#include "assign/solver.hpp"
#include "json.hpp"

namespace assign::cli {

using nlohmann::json;

enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitInfeasible = 2,
  kExitInternal = 3,
  kExitVerifyFailed = 4,
};

struct SolveArgs {
  std::string input;
  std::optional<std::string> format;  // csv | json; default from extension
  std::optional<Objective> objective;
  std::optional<std::int64_t> scale;
  std::optional<std::string> out;
};

struct VerifyArgs {
  std::string input;
  std::string solution;
  std::optional<std::string> format;
};

struct BenchArgs {
  std::string sizes;
  int trials = 1;
  std::uint64_t seed = 0;
  std::string algorithms = "uha";
  std::optional<std::string> out;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline RawProblem load_problem(const std::string& path, const std::optional<std::string>& format) {
  std::string fmt = format.value_or("");
  if (fmt.empty()) {
    fmt = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0 ? "json" : "csv";
  }
  const std::string text = read_file(path);
  if (fmt == "json") return parse_json(text);
  if (fmt == "csv") return parse_csv(text);
  throw Error("unknown format '" + fmt + "' (expected csv or json)");
}

// value / scale as a JSON number: an integer when exact, otherwise a double.
inline json fixed_number(Weight value, std::int64_t scale) {
  if (value % scale == 0) return value / scale;
  return static_cast<double>(value) / static_cast<double>(scale);
}

inline json solve_report(const Instance& inst, const BackMap& back, const Solution& sol,
                         const UserReport& report, double wall_time_ms) {
  json assignment = json::array();
  for (const auto& pair : report.assignment) {
    assignment.push_back({{"worker", back.worker_names[pair.worker]},
                          {"task", back.task_names[pair.task]},
                          {"weight", pair.forbidden ? json(nullptr)
                                                    : fixed_number(pair.weight, back.scale)}});
  }
  json unassigned_workers = json::array();
  for (const Index i : report.unassigned_workers) unassigned_workers.push_back(back.worker_names[i]);
  json unassigned_tasks = json::array();
  for (const Index j : report.unassigned_tasks) unassigned_tasks.push_back(back.task_names[j]);

  json match = json::array();
  for (Index i = 0; i < inst.size(); ++i) match.push_back(*sol.matching.task_of(i));

  return {
      {"objective", to_string(report.objective)},
      {"scale", back.scale},
      {"assignment", std::move(assignment)},
      {"unassigned_workers", std::move(unassigned_workers)},
      {"unassigned_tasks", std::move(unassigned_tasks)},
      {"objective_value", fixed_number(report.objective_value, back.scale)},
      {"objective_value_exact", format_fixed(report.objective_value, back.scale)},
      {"assignment_infeasible", report.assignment_infeasible},
      {"certificate", "optimal"},
      {"dual",
       {{"n", inst.size()},
        {"labels_x", sol.labeling.labels_x},
        {"labels_y", sol.labeling.labels_y},
        {"match", std::move(match)}}},
      {"stats",
       {{"phases", sol.phases},
        {"label_improvements", sol.label_improvements},
        {"wall_time_ms", wall_time_ms}}},
  };
}

inline bool write_output(const std::string& text, const std::optional<std::string>& path,
                         std::ostream& out, std::ostream& err) {
  if (!path) {
    out << text;
    return true;
  }
  std::ofstream file(*path, std::ios::binary);
  if (!file || !(file << text)) {
    err << "error: cannot write '" << *path << "'\n";
    return false;
  }
  return true;
}

inline int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  RawProblem raw;
  try {
    raw = load_problem(args.input, args.format);
  } catch (const Error& e) {
    err << "input error: " << args.input << ": " << e.what() << "\n";
    return kExitInputError;
  }
  if (args.objective) raw.objective = *args.objective;
  if (args.scale) raw.scale = *args.scale;

  try {
    const auto [inst, back] = canonicalize(raw);
    const auto start = std::chrono::steady_clock::now();
    const Solution sol = solve(inst);
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    if (const Verdict v = check_optimal(inst, sol); v != Verdict::kOptimal) {
      err << "internal error: solver output failed its certificate (" << to_string(v) << ")\n";
      return kExitInternal;
    }
    const UserReport report = translate_back(sol, inst, back);
    if (!write_output(solve_report(inst, back, sol, report, ms).dump(2) + "\n", args.out, out,
                      err)) {
      return kExitInputError;
    }
    if (report.assignment_infeasible) {
      err << "infeasible: every complete assignment uses a forbidden pair\n";
      return kExitInfeasible;
    }
    return kExitOk;
  } catch (const IngestError& e) {
    err << (e.kind() == IngestErrorKind::kInfeasibleRow ||
                    e.kind() == IngestErrorKind::kInfeasibleColumn
                ? "infeasible: "
                : "input error: ")
        << e.what() << "\n";
    return e.kind() == IngestErrorKind::kInfeasibleRow ||
                   e.kind() == IngestErrorKind::kInfeasibleColumn
               ? kExitInfeasible
               : kExitInputError;
  } catch (const Error& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ContractViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

namespace detail {

inline Index lookup(const std::vector<std::string>& names, const std::string& name,
                    const char* what) {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw Error(std::string("unknown ") + what + " '" + name + "'");
  return static_cast<Index>(it - names.begin());
}

}  // namespace detail

// Rebuilds the claimed solution from a solve report and checks its
// certificate against the problem. Pairs between real workers and tasks come
// from "assignment"; pairs touching padding come from "dual.match".
inline int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  try {
    RawProblem raw = load_problem(args.input, args.format);
    const json doc = json::parse(read_file(args.solution));
    const std::string objective = doc.at("objective").get<std::string>();
    if (objective != "max" && objective != "min") throw Error("bad objective in solution");
    raw.objective = objective == "min" ? Objective::kMinimize : Objective::kMaximize;
    raw.scale = doc.at("scale").get<std::int64_t>();
    const auto [inst, back] = canonicalize(raw);
    const Index n = inst.size();

    const json& dual = doc.at("dual");
    Labeling labels{dual.at("labels_x").get<std::vector<Weight>>(),
                    dual.at("labels_y").get<std::vector<Weight>>()};
    const auto match = dual.at("match").get<std::vector<Index>>();
    if (dual.at("n").get<Index>() != n || labels.labels_x.size() != n ||
        labels.labels_y.size() != n || match.size() != n) {
      err << "input error: solution is for side " << dual.at("n").get<Index>()
          << ", problem has side " << n << "\n";
      return kExitInputError;
    }

    // Collect claimed pairs, then link; any clash means no perfect matching.
    std::vector<std::pair<Index, Index>> pairs;
    Weight claimed_forbidden = 0;
    for (const auto& entry : doc.at("assignment")) {
      const Index i = detail::lookup(back.worker_names, entry.at("worker").get<std::string>(),
                                     "worker");
      const Index j =
          detail::lookup(back.task_names, entry.at("task").get<std::string>(), "task");
      pairs.emplace_back(i, j);
      if (back.is_forbidden(i, j)) claimed_forbidden += inst.weight(i, j);
    }
    for (Index i = 0; i < n; ++i) {
      if (match[i] >= n) throw Error("dual.match entry out of range");
      if (inst.is_dummy_row(i) || inst.is_dummy_col(match[i])) pairs.emplace_back(i, match[i]);
    }
    Solution sol;
    sol.matching = Matching(n);
    sol.labeling = std::move(labels);
    bool clash = false;
    for (const auto& [i, j] : pairs) {
      if (sol.matching.task_of(i) || sol.matching.worker_of(j)) {
        clash = true;
        break;
      }
      sol.matching.link(i, j);
    }
    const Weight user_value =
        parse_fixed(doc.at("objective_value_exact").get<std::string>(), back.scale);
    sol.total_weight = (back.negated ? -user_value : user_value) + claimed_forbidden;

    const Verdict verdict = clash ? Verdict::kNotPerfect : check_optimal(inst, sol);
    out << to_string(verdict) << "\n";
    return verdict == Verdict::kOptimal ? kExitOk : kExitVerifyFailed;
  } catch (const json::exception& e) {
    err << "input error: malformed solution report: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  }
}

// "64,128,256" or ranges such as "2..7", mixed freely.
inline std::vector<Index> parse_sizes(const std::string& text) {
  std::vector<Index> sizes;
  std::stringstream ss(text);
  std::string item;
  const auto to_size = [&](const std::string& s) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty() || v < 1) throw Error("bad size '" + s + "'");
    return static_cast<Index>(v);
  };
  while (std::getline(ss, item, ',')) {
    if (const auto dots = item.find(".."); dots != std::string::npos) {
      const Index lo = to_size(item.substr(0, dots));
      const Index hi = to_size(item.substr(dots + 2));
      if (lo > hi) throw Error("empty size range '" + item + "'");
      for (Index n = lo; n <= hi; ++n) sizes.push_back(n);
    } else {
      sizes.push_back(to_size(item));
    }
  }
  if (sizes.empty()) throw Error("no sizes given");
  return sizes;
}

inline std::vector<Algorithm> parse_algorithms(const std::string& text) {
  std::vector<Algorithm> algorithms;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Algorithm a;
    if (item == "uha") {
      a = Algorithm::kUha;
    } else if (item == "brute") {
      a = Algorithm::kBrute;
    } else {
      throw Error("unknown algorithm '" + item + "' (expected uha or brute)");
    }
    if (std::find(algorithms.begin(), algorithms.end(), a) == algorithms.end()) {
      algorithms.push_back(a);
    }
  }
  if (algorithms.empty()) throw Error("no algorithms given");
  return algorithms;
}

inline json bench_report(const BenchResult& r) {
  json sizes = r.config.sizes;
  json algorithms = json::array();
  for (const Algorithm a : r.config.algorithms) algorithms.push_back(to_string(a));
  json cells = json::array();
  for (const auto& c : r.cells) {
    cells.push_back({{"algorithm", to_string(c.algorithm)},
                     {"size", c.size},
                     {"median_ms", c.median_ms},
                     {"times_ms", c.times_ms},
                     {"values", c.values}});
  }
  return {
      {"seed", r.config.seed},
      {"trials", r.config.trials},
      {"sizes", std::move(sizes)},
      {"algorithms", std::move(algorithms)},
      {"weight_range", {kBenchWeightMin, kBenchWeightMax}},
      {"results", std::move(cells)},
      {"uha_loglog_slope", r.uha_slope ? json(*r.uha_slope) : json(nullptr)},
      {"cross_check", {{"compared", r.compared}, {"mismatches", r.mismatches}}},
  };
}

inline std::string bench_table(const BenchResult& r) {
  std::ostringstream os;
  os << std::left << std::setw(10) << "algorithm" << std::right << std::setw(8) << "size"
     << std::setw(14) << "median_ms" << "\n";
  for (const auto& c : r.cells) {
    os << std::left << std::setw(10) << to_string(c.algorithm) << std::right << std::setw(8)
       << c.size << std::setw(14) << std::fixed << std::setprecision(4) << c.median_ms << "\n";
  }
  os << "uha log-log slope: ";
  if (r.uha_slope) {
    os << std::setprecision(3) << *r.uha_slope << "\n";
  } else {
    os << "n/a\n";
  }
  os << "cross-check: " << r.compared << " compared, " << r.mismatches << " mismatches\n";
  return os.str();
}

// JSON goes to --out (table to stdout) or to stdout (table to stderr).
inline int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  BenchConfig config;
  try {
    config.sizes = parse_sizes(args.sizes);
    config.algorithms = parse_algorithms(args.algorithms);
    config.trials = args.trials;
    config.seed = args.seed;
    validate(config);
  } catch (const Error& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  }
  const BenchResult result = run_bench(config);
  if (!write_output(bench_report(result).dump(2) + "\n", args.out, out, err)) {
    return kExitInputError;
  }
  (args.out ? out : err) << bench_table(result);
  if (result.mismatches != 0) {
    err << "internal error: uha and brute force disagree on " << result.mismatches
        << " instances\n";
    return kExitInternal;
  }
  return kExitOk;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Assignment problem solver (maximum-weight perfect bipartite matching)", "assign"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  std::string objective;
  std::int64_t scale = 0;
  std::string solve_format, solve_out;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a problem file and print a JSON report");
  solve_cmd->add_option("--input", solve_args.input, "Problem file (CSV or JSON)")->required();
  solve_cmd->add_option("--format", solve_format, "csv or json (default: by extension)")
      ->check(CLI::IsMember({"csv", "json"}));
  solve_cmd->add_option("--objective", objective, "max or min (default: from file, else max)")
      ->check(CLI::IsMember({"max", "min"}));
  solve_cmd->add_option("--scale", scale, "Fixed-point denominator for real weights")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--out", solve_out, "Write the report here instead of stdout");

  VerifyArgs verify_args;
  std::string verify_format;
  auto* verify_cmd = app.add_subcommand("verify", "Check a solve report's optimality certificate");
  verify_cmd->add_option("--input", verify_args.input, "Problem file")->required();
  verify_cmd->add_option("--solution", verify_args.solution, "Report written by solve")
      ->required();
  verify_cmd->add_option("--format", verify_format, "csv or json (default: by extension)")
      ->check(CLI::IsMember({"csv", "json"}));

  BenchArgs bench_args;
  std::string bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "Time the solver against brute force");
  bench_cmd->add_option("--sizes", bench_args.sizes, "Sizes, e.g. 64,128 or 2..7")->required();
  bench_cmd->add_option("--trials", bench_args.trials, "Instances per size")
      ->required()
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench_args.seed, "Instance generator seed")->required();
  bench_cmd->add_option("--algorithms", bench_args.algorithms, "Comma list of uha,brute");
  bench_cmd->add_option("--out", bench_out, "Write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  if (*solve_cmd) {
    if (!solve_format.empty()) solve_args.format = solve_format;
    if (!objective.empty()) {
      solve_args.objective = objective == "min" ? Objective::kMinimize : Objective::kMaximize;
    }
    if (scale > 0) solve_args.scale = scale;
    if (!solve_out.empty()) solve_args.out = solve_out;
    return cmd_solve(solve_args, out, err);
  }
  if (*verify_cmd) {
    if (!verify_format.empty()) verify_args.format = verify_format;
    return cmd_verify(verify_args, out, err);
  }
  if (!bench_out.empty()) bench_args.out = bench_out;
  return cmd_bench(bench_args, out, err);
}

}  // namespace assign::cli

#endif  // ASSIGN_CLI_HPP_
