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

// Ingestion: turns user problems (rectangular, minimizing, real-valued, with
// forbidden pairs) into square integer maximization instances, and maps
// solutions back into the user's terms.
//
// CSV  one line per worker, comma-separated cells. A cell is a number or the
//      literal `x` (forbidden pair). If the first cell of the first line is
//      `tasks:`, the rest of that line names the tasks.
// JSON {"workers": [names]?, "tasks": [names]?, "objective": "max"|"min",
//       "weights": [[number|null, ...], ...]}   null marks a forbidden pair.

#ifndef ASSIGN_INGEST_HPP_
#define ASSIGN_INGEST_HPP_

#include <charconv>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "assign/model.hpp"
#include "json.hpp"

namespace assign {

inline constexpr std::int64_t kDefaultRealScale = 1'000'000;

// One matrix entry as written by the user.
struct Cell {
  enum class Kind { kInteger, kReal, kForbidden };
  Kind kind = Kind::kForbidden;
  std::int64_t integer = 0;
  double real = 0.0;

  static Cell of(std::int64_t v) { return {Kind::kInteger, v, 0.0}; }
  static Cell of_real(double v) { return {Kind::kReal, 0, v}; }
  static Cell forbidden() { return {}; }
  bool is_forbidden() const { return kind == Kind::kForbidden; }
  bool is_fractional() const { return kind == Kind::kReal && std::trunc(real) != real; }
};

struct RawProblem {
  std::optional<std::vector<std::string>> worker_names;
  std::optional<std::vector<std::string>> task_names;
  std::vector<std::vector<Cell>> weights;
  Objective objective = Objective::kMaximize;
  // Fixed-point denominator. Unset: 1 for all-integer input, otherwise
  // kDefaultRealScale.
  std::optional<std::int64_t> scale;
};

// Parse failure. `row` and `column` are 1-based; 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(std::size_t row, std::size_t column, const std::string& message)
      : Error(position(row, column) + message), row_(row), column_(column) {}
  std::size_t row() const { return row_; }
  std::size_t column() const { return column_; }

 private:
  static std::string position(std::size_t row, std::size_t column) {
    if (row == 0) return "";
    std::string out = "row " + std::to_string(row);
    if (column != 0) out += ", column " + std::to_string(column);
    return out + ": ";
  }
  std::size_t row_;
  std::size_t column_;
};

enum class IngestErrorKind { kInvalid, kInfeasibleRow, kInfeasibleColumn, kOverflow };

class IngestError : public Error {
 public:
  IngestError(IngestErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}
  IngestErrorKind kind() const { return kind_; }

 private:
  IngestErrorKind kind_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

// Accepts an optional leading '+'. Returns nullopt on anything else that is
// not a complete finite number.
inline std::optional<Cell> parse_number(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  std::int64_t integer = 0;
  if (auto [p, ec] = std::from_chars(begin, end, integer); ec == std::errc() && p == end) {
    return Cell::of(integer);
  }
  double real = 0.0;
  if (auto [p, ec] = std::from_chars(begin, end, real); ec == std::errc() && p == end &&
                                                        std::isfinite(real)) {
    return Cell::of_real(real);
  }
  return std::nullopt;
}

inline std::string default_name(char prefix, Index i) {
  return std::string(1, prefix) + std::to_string(i);
}

inline bool checked_mul(std::int64_t a, std::int64_t b, std::int64_t& out) {
  return !__builtin_mul_overflow(a, b, &out);
}

}  // namespace detail

inline RawProblem parse_csv(std::string_view text) {
  RawProblem raw;
  const auto lines = detail::split(text, '\n');
  std::size_t width = 0;
  std::size_t width_line = 0;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::size_t line_no = ln + 1;
    if (detail::trim(lines[ln]).empty()) continue;
    const auto cells = detail::split(lines[ln], ',');
    if (raw.weights.empty() && !raw.task_names && detail::trim(cells.front()) == "tasks:") {
      std::vector<std::string> names;
      for (std::size_t c = 1; c < cells.size(); ++c) {
        names.emplace_back(detail::trim(cells[c]));
      }
      if (names.empty()) throw ParseError(line_no, 0, "task header names no tasks");
      width = names.size();
      width_line = line_no;
      raw.task_names = std::move(names);
      continue;
    }
    if (width == 0) {
      width = cells.size();
      width_line = line_no;
    } else if (cells.size() != width) {
      throw ParseError(line_no, 0,
                       "ragged row: " + std::to_string(cells.size()) + " cells, expected " +
                           std::to_string(width) + " (as on row " +
                           std::to_string(width_line) + ")");
    }
    std::vector<Cell> row;
    row.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto cell = detail::trim(cells[c]);
      if (cell == "x") {
        row.push_back(Cell::forbidden());
      } else if (auto number = detail::parse_number(cell)) {
        row.push_back(*number);
      } else {
        throw ParseError(line_no, c + 1, "not a number: '" + std::string(cell) + "'");
      }
    }
    raw.weights.push_back(std::move(row));
  }
  if (raw.weights.empty()) throw ParseError(0, 0, "input has no weight rows");
  return raw;
}

inline RawProblem parse_json(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, 0, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError(0, 0, "top-level JSON value must be an object");

  RawProblem raw;
  const auto names = [&](const char* key) -> std::optional<std::vector<std::string>> {
    if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
    if (!doc[key].is_array()) throw ParseError(0, 0, std::string("'") + key + "' must be an array");
    std::vector<std::string> out;
    for (const auto& v : doc[key]) {
      if (!v.is_string()) throw ParseError(0, 0, std::string("'") + key + "' must hold strings");
      out.push_back(v.get<std::string>());
    }
    return out;
  };
  raw.worker_names = names("workers");
  raw.task_names = names("tasks");

  if (doc.contains("objective")) {
    const auto& obj = doc["objective"];
    if (obj == "max") {
      raw.objective = Objective::kMaximize;
    } else if (obj == "min") {
      raw.objective = Objective::kMinimize;
    } else {
      throw ParseError(0, 0, "'objective' must be \"max\" or \"min\"");
    }
  }

  if (!doc.contains("weights") || !doc["weights"].is_array() || doc["weights"].empty()) {
    throw ParseError(0, 0, "'weights' must be a non-empty array of rows");
  }
  std::size_t width = 0;
  std::size_t r = 0;
  for (const auto& row_json : doc["weights"]) {
    ++r;
    if (!row_json.is_array() || row_json.empty()) {
      throw ParseError(r, 0, "weight row must be a non-empty array");
    }
    if (width == 0) {
      width = row_json.size();
    } else if (row_json.size() != width) {
      throw ParseError(r, 0,
                       "ragged row: " + std::to_string(row_json.size()) + " cells, expected " +
                           std::to_string(width));
    }
    std::vector<Cell> row;
    std::size_t c = 0;
    for (const auto& v : row_json) {
      ++c;
      if (v.is_null()) {
        row.push_back(Cell::forbidden());
      } else if (v.is_number_integer() && !v.is_number_unsigned()) {
        row.push_back(Cell::of(v.get<std::int64_t>()));
      } else if (v.is_number_unsigned()) {
        const auto u = v.get<std::uint64_t>();
        if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
          throw ParseError(r, c, "integer out of range");
        }
        row.push_back(Cell::of(static_cast<std::int64_t>(u)));
      } else if (v.is_number_float() && std::isfinite(v.get<double>())) {
        row.push_back(Cell::of_real(v.get<double>()));
      } else {
        throw ParseError(r, c, "not a number: " + v.dump());
      }
    }
    raw.weights.push_back(std::move(row));
  }
  return raw;
}

// What canonicalize() did, so results can be reported in user terms.
struct BackMap {
  Index workers = 0;  // real rows
  Index tasks = 0;    // real columns
  Index n = 0;        // padded side
  Objective objective = Objective::kMaximize;
  bool negated = false;
  std::int64_t scale = 1;
  std::optional<Weight> sentinel;  // weight given to forbidden pairs
  std::vector<char> forbidden;     // workers x tasks, row-major
  std::vector<std::string> worker_names;
  std::vector<std::string> task_names;

  bool is_forbidden(Index worker, Index task) const { return forbidden[worker * tasks + task]; }
};

inline std::pair<Instance, BackMap> canonicalize(const RawProblem& raw) {
  const Index m = raw.weights.size();
  if (m == 0 || raw.weights.front().empty()) {
    throw IngestError(IngestErrorKind::kInvalid, "problem has no weights");
  }
  const Index k = raw.weights.front().size();
  for (Index i = 0; i < m; ++i) {
    if (raw.weights[i].size() != k) {
      throw IngestError(IngestErrorKind::kInvalid, "weight row " + std::to_string(i + 1) +
                                                       " is ragged");
    }
  }
  if (raw.worker_names && raw.worker_names->size() != m) {
    throw IngestError(IngestErrorKind::kInvalid,
                      std::to_string(raw.worker_names->size()) + " worker names for " +
                          std::to_string(m) + " rows");
  }
  if (raw.task_names && raw.task_names->size() != k) {
    throw IngestError(IngestErrorKind::kInvalid,
                      std::to_string(raw.task_names->size()) + " task names for " +
                          std::to_string(k) + " columns");
  }

  BackMap back;
  back.workers = m;
  back.tasks = k;
  back.n = std::max(m, k);
  back.objective = raw.objective;
  back.negated = raw.objective == Objective::kMinimize;
  bool fractional = false;
  for (const auto& row : raw.weights) {
    for (const auto& cell : row) fractional = fractional || cell.is_fractional();
  }
  back.scale = raw.scale.value_or(fractional ? kDefaultRealScale : 1);
  if (back.scale < 1) {
    throw IngestError(IngestErrorKind::kInvalid, "scale must be a positive integer");
  }
  back.forbidden.assign(m * k, 0);
  for (Index i = 0; i < m; ++i) {
    back.worker_names.push_back(raw.worker_names ? (*raw.worker_names)[i]
                                                 : detail::default_name('w', i));
  }
  for (Index j = 0; j < k; ++j) {
    back.task_names.push_back(raw.task_names ? (*raw.task_names)[j]
                                             : detail::default_name('t', j));
  }

  for (Index i = 0; i < m; ++i) {
    const auto& row = raw.weights[i];
    if (std::all_of(row.begin(), row.end(), [](const Cell& c) { return c.is_forbidden(); })) {
      throw IngestError(IngestErrorKind::kInfeasibleRow,
                        "worker '" + back.worker_names[i] + "' has no permitted task");
    }
  }
  for (Index j = 0; j < k; ++j) {
    bool any = false;
    for (Index i = 0; i < m && !any; ++i) any = !raw.weights[i][j].is_forbidden();
    if (!any) {
      throw IngestError(IngestErrorKind::kInfeasibleColumn,
                        "task '" + back.task_names[j] + "' has no permitted worker");
    }
  }

  const Index n = back.n;
  const Weight bound = weight_bound(n);
  const auto overflow = [&](Index i, Index j) {
    return IngestError(IngestErrorKind::kOverflow,
                       "weight of ('" + back.worker_names[i] + "', '" + back.task_names[j] +
                           "') exceeds the fixed-point range (|w * scale| <= " +
                           std::to_string(bound) + ")");
  };

  // Canonical integer weights; dummy cells are 0.
  std::vector<std::vector<Weight>> w(n, std::vector<Weight>(n, 0));
  Weight lo = std::numeric_limits<Weight>::max();
  Weight hi = std::numeric_limits<Weight>::min();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i < m && j < k) {
        const Cell& cell = raw.weights[i][j];
        if (cell.is_forbidden()) {
          back.forbidden[i * k + j] = 1;
          continue;
        }
        Weight v = 0;
        if (cell.kind == Cell::Kind::kInteger) {
          if (!detail::checked_mul(cell.integer, back.scale, v)) throw overflow(i, j);
        } else {
          const double scaled = std::round(cell.real * static_cast<double>(back.scale));
          if (!(std::fabs(scaled) <= static_cast<double>(bound))) throw overflow(i, j);
          v = static_cast<Weight>(scaled);
        }
        if (v > bound || v < -bound) throw overflow(i, j);
        w[i][j] = back.negated ? -v : v;
      }
      lo = std::min(lo, w[i][j]);
      hi = std::max(hi, w[i][j]);
    }
  }

  if (std::find(back.forbidden.begin(), back.forbidden.end(), 1) != back.forbidden.end()) {
    // Any matching using a forbidden pair scores below n * lo, the floor of
    // every forbidden-free matching.
    const __int128 sentinel =
        static_cast<__int128>(lo) - static_cast<__int128>(n) * (hi - lo) - 1;
    if (sentinel < -static_cast<__int128>(bound)) {
      throw IngestError(IngestErrorKind::kOverflow,
                        "forbidden-pair sentinel exceeds the weight range; reduce the weight "
                        "spread or the scale");
    }
    back.sentinel = static_cast<Weight>(sentinel);
    for (Index i = 0; i < m; ++i) {
      for (Index j = 0; j < k; ++j) {
        if (back.is_forbidden(i, j)) w[i][j] = *back.sentinel;
      }
    }
  }

  std::vector<Index> dummy_rows, dummy_cols;
  for (Index i = m; i < n; ++i) dummy_rows.push_back(i);
  for (Index j = k; j < n; ++j) dummy_cols.push_back(j);
  return {new_instance(w, raw.objective, std::move(dummy_rows), std::move(dummy_cols)),
          std::move(back)};
}

// Exact rendering of value / scale: a decimal when scale is a power of ten or
// divides value, otherwise a reduced fraction "p/q".
inline std::string format_fixed(Weight value, std::int64_t scale) {
  if (scale == 1 || value % scale == 0) return std::to_string(value / scale);
  std::int64_t p = 1;
  int digits = 0;
  while (p < scale && p <= std::numeric_limits<std::int64_t>::max() / 10) {
    p *= 10;
    ++digits;
  }
  const bool negative = value < 0;
  const std::uint64_t mag = negative ? 0 - static_cast<std::uint64_t>(value)
                                     : static_cast<std::uint64_t>(value);
  const auto uscale = static_cast<std::uint64_t>(scale);
  if (p == scale) {
    std::string frac = std::to_string(mag % uscale);
    frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    return (negative ? "-" : "") + std::to_string(mag / uscale) + "." + frac;
  }
  const std::uint64_t g = std::gcd(mag, uscale);
  return (negative ? "-" : "") + std::to_string(mag / g) + "/" + std::to_string(uscale / g);
}

// Inverse of format_fixed: the integer v with v / scale equal to `text`.
// Throws ParseError if the text is not exactly representable.
inline Weight parse_fixed(std::string_view text, std::int64_t scale) {
  const auto fail = [&] {
    return ParseError(0, 0, "'" + std::string(text) + "' is not a multiple of 1/" +
                                std::to_string(scale));
  };
  const auto to_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) throw fail();
    return v;
  };
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::int64_t num = to_int(text.substr(0, slash));
    const std::int64_t den = to_int(text.substr(slash + 1));
    if (den <= 0 || scale % den != 0) throw fail();
    std::int64_t out = 0;
    if (!detail::checked_mul(num, scale / den, out)) throw fail();
    return out;
  }
  bool negative = !text.empty() && text.front() == '-';
  std::string_view body = negative ? text.substr(1) : text;
  const auto dot = body.find('.');
  std::string_view int_part = body.substr(0, dot);
  std::string_view frac_part = dot == std::string_view::npos ? "" : body.substr(dot + 1);
  while (!frac_part.empty() && frac_part.back() == '0') frac_part.remove_suffix(1);
  std::int64_t out = 0;
  if (!detail::checked_mul(to_int(int_part), scale, out)) throw fail();
  if (!frac_part.empty()) {
    std::int64_t frac = to_int(frac_part);
    std::int64_t denom = 1;
    for (std::size_t d = 0; d < frac_part.size(); ++d) {
      if (!detail::checked_mul(denom, 10, denom)) throw fail();
    }
    // frac / denom must be a whole number of 1/scale steps.
    const __int128 scaled = static_cast<__int128>(frac) * scale;
    if (scaled % denom != 0) throw fail();
    out += static_cast<std::int64_t>(scaled / denom);
  }
  return negative ? -out : out;
}

struct ReportedPair {
  Index worker;
  Index task;
  Weight weight;  // user sense, fixed-point (divide by scale)
  bool forbidden;
};

// A solution in the user's terms: real workers and tasks only.
struct UserReport {
  std::vector<ReportedPair> assignment;
  std::vector<Index> unassigned_workers;
  std::vector<Index> unassigned_tasks;
  Weight objective_value = 0;  // user sense, fixed-point; forbidden pairs excluded
  std::int64_t scale = 1;
  Objective objective = Objective::kMaximize;
  bool assignment_infeasible = false;
};

inline UserReport translate_back(const Solution& sol, const Instance& inst,
                                 const BackMap& back) {
  if (inst.size() != back.n || sol.matching.n() != back.n) {
    throw DimensionMismatch("solution side " + std::to_string(sol.matching.n()) +
                            " does not match the problem's padded side " +
                            std::to_string(back.n));
  }
  if (!is_perfect(sol.matching, back.n)) {
    throw ContractViolation("translate_back needs a perfect matching");
  }
  UserReport report;
  report.scale = back.scale;
  report.objective = back.objective;
  for (Index i = 0; i < back.workers; ++i) {
    const Index j = *sol.matching.task_of(i);
    if (j >= back.tasks) {
      report.unassigned_workers.push_back(i);
      continue;
    }
    const bool forbidden = back.is_forbidden(i, j);
    const Weight canonical = inst.weight(i, j);
    const Weight user = back.negated ? -canonical : canonical;
    report.assignment.push_back({i, j, user, forbidden});
    if (forbidden) {
      report.assignment_infeasible = true;
    } else {
      report.objective_value += user;
    }
  }
  for (Index j = 0; j < back.tasks; ++j) {
    if (*sol.matching.worker_of(j) >= back.workers) report.unassigned_tasks.push_back(j);
  }
  return report;
}

}  // namespace assign

#endif  // ASSIGN_INGEST_HPP_
