// Copyright 2026 The compda Authors
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

#pragma once

// Placement delivery arrays: representation, text format, validation and
// derived statistics.
//
// A PDA is an F x K grid. Rows are file batches, columns are nodes. A Star
// at (row, col) means the node stores the batch; an ordinary symbol marks an
// intermediate value the node still needs. Two equal symbols must sit in
// distinct rows and columns (rule a), and the two cells completing their
// 2x2 rectangle must both be Stars (rule b).
//
// Indices are 0-based in the API and 1-based in text, messages and reports.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "compda/errors.hpp"
#include "compda/rational.hpp"

namespace compda {

class Entry {
 public:
  constexpr Entry() = default;

  static constexpr Entry star() { return Entry(); }
  static Entry ordinary(std::uint32_t symbol) {
    if (symbol == 0) throw RangeError("ordinary symbols are positive");
    Entry e;
    e.value_ = symbol;
    return e;
  }

  constexpr bool is_star() const { return value_ == 0; }
  // 0 for Star.
  constexpr std::uint32_t symbol() const { return value_; }

  friend constexpr bool operator==(Entry, Entry) = default;

 private:
  std::uint32_t value_ = 0;
};

class Grid {
 public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, Entry fill = Entry::star())
      : rows_(rows), cols_(cols), cells_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Entry& at(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }
  Entry at(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }
  std::span<const Entry> row(std::size_t r) const {
    return {cells_.data() + r * cols_, cols_};
  }
  std::span<const Entry> cells() const { return cells_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Entry> cells_;
};

struct Cell {
  std::size_t row;
  std::size_t col;
  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

// Occurrences of every ordinary symbol, each list in row-major order.
inline std::map<std::uint32_t, std::vector<Cell>> symbol_occurrences(
    const Grid& grid) {
  std::map<std::uint32_t, std::vector<Cell>> occ;
  for (std::size_t r = 0; r < grid.rows(); ++r)
    for (std::size_t c = 0; c < grid.cols(); ++c)
      if (!grid.at(r, c).is_star()) occ[grid.at(r, c).symbol()].push_back({r, c});
  return occ;
}

// ---------------------------------------------------------------------------
// Validation

enum class Rule {
  empty_grid,
  distinct_rows_cols,  // a)
  cross_star,          // b)
  canonical_numbering,
};

inline std::string_view rule_name(Rule rule) {
  switch (rule) {
    case Rule::empty_grid: return "empty";
    case Rule::distinct_rows_cols: return "a";
    case Rule::cross_star: return "b";
    case Rule::canonical_numbering: return "canonical";
  }
  return "?";
}

struct Violation {
  Rule rule;
  std::uint32_t symbol = 0;
  std::vector<std::size_t> rows;  // 0-based
  std::vector<std::size_t> cols;  // 0-based

  std::string describe() const {
    auto list = [](const std::vector<std::size_t>& v) {
      std::string s = "{";
      for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i] + 1);
      return s + "}";
    };
    switch (rule) {
      case Rule::empty_grid:
        return "grid has no rows or no columns";
      case Rule::distinct_rows_cols:
        return "condition a) violated: symbol " + std::to_string(symbol) +
               " repeats within rows " + list(rows) + ", cols " + list(cols);
      case Rule::cross_star:
        return "condition b) violated: symbol " + std::to_string(symbol) +
               " at rows " + list(rows) + ", cols " + list(cols) +
               " lacks Stars on the opposite corners";
      case Rule::canonical_numbering:
        return "symbol " + std::to_string(symbol) + " at row " + list(rows) +
               ", col " + list(cols) +
               " breaks first-occurrence numbering 1..S";
    }
    return {};
  }
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::size_t k = 0;
  std::size_t f = 0;
  std::size_t t = 0;
  std::size_t s = 0;

  bool ok() const { return violations.empty(); }
  bool trivial() const { return ok() && s == 0; }
};

class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report)
      : Error(summarize(report)), report_(std::move(report)) {}

  const ValidationReport& report() const noexcept { return report_; }

 private:
  static std::string summarize(const ValidationReport& report) {
    std::string msg = "invalid PDA:";
    for (const auto& v : report.violations) msg += "\n  " + v.describe();
    return msg;
  }

  ValidationReport report_;
};

struct ValidateOptions {
  // Symbols must be numbered 1..S by first row-major occurrence.
  bool require_canonical = true;
};

// Reports every violation, not just the first.
inline ValidationReport validate_pda(const Grid& grid,
                                     ValidateOptions options = {}) {
  ValidationReport report;
  report.f = grid.rows();
  report.k = grid.cols();
  if (grid.empty()) {
    report.violations.push_back({Rule::empty_grid, 0, {}, {}});
    return report;
  }
  for (Entry e : grid.cells()) report.t += e.is_star() ? 1 : 0;

  const auto occ = symbol_occurrences(grid);
  report.s = occ.size();
  for (const auto& [symbol, cells] : occ) {
    for (std::size_t x = 0; x < cells.size(); ++x) {
      for (std::size_t y = x + 1; y < cells.size(); ++y) {
        const Cell p = cells[x];
        const Cell q = cells[y];
        if (p.row == q.row) {
          report.violations.push_back(
              {Rule::distinct_rows_cols, symbol, {p.row}, {p.col, q.col}});
        } else if (p.col == q.col) {
          report.violations.push_back(
              {Rule::distinct_rows_cols, symbol, {p.row, q.row}, {p.col}});
        } else if (!grid.at(p.row, q.col).is_star() ||
                   !grid.at(q.row, p.col).is_star()) {
          report.violations.push_back(
              {Rule::cross_star, symbol, {p.row, q.row}, {p.col, q.col}});
        }
      }
    }
  }

  if (options.require_canonical) {
    std::uint32_t next = 1;
    std::unordered_map<std::uint32_t, bool> seen;
    for (std::size_t r = 0; r < grid.rows(); ++r) {
      for (std::size_t c = 0; c < grid.cols(); ++c) {
        const Entry e = grid.at(r, c);
        if (e.is_star() || seen.count(e.symbol())) continue;
        seen[e.symbol()] = true;
        if (e.symbol() != next) {
          report.violations.push_back(
              {Rule::canonical_numbering, e.symbol(), {r}, {c}});
          return report;
        }
        ++next;
      }
    }
  }
  return report;
}

// Renumbers ordinary symbols 1..S by first row-major occurrence.
inline Grid canonicalize(const Grid& grid) {
  Grid out = grid;
  std::unordered_map<std::uint32_t, std::uint32_t> relabel;
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    for (std::size_t c = 0; c < grid.cols(); ++c) {
      const Entry e = grid.at(r, c);
      if (e.is_star()) continue;
      auto [it, inserted] = relabel.try_emplace(
          e.symbol(), static_cast<std::uint32_t>(relabel.size() + 1));
      out.at(r, c) = Entry::ordinary(it->second);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pda

class Pda;
Pda column_subarray(const Pda& pda, std::span<const std::size_t> nodes);

// An immutable grid satisfying rules a) and b). Constructed through
// from_grid() it is also canonical; column subarrays keep parent labels.
class Pda {
 public:
  static Pda from_grid(const Grid& grid) {
    auto report = validate_pda(grid, {.require_canonical = false});
    if (!report.ok()) throw ValidationError(std::move(report));
    return Pda(canonicalize(grid), report.t, report.s, true);
  }

  std::size_t k() const { return grid_.cols(); }
  std::size_t f() const { return grid_.rows(); }
  std::size_t t() const { return t_; }
  std::size_t s() const { return s_; }

  const Grid& grid() const { return grid_; }
  Entry at(std::size_t row, std::size_t col) const { return grid_.at(row, col); }
  bool is_canonical() const { return canonical_; }
  bool is_trivial() const { return s_ == 0; }

  friend bool operator==(const Pda& a, const Pda& b) {
    return a.grid_ == b.grid_;
  }

 private:
  Pda(Grid grid, std::size_t t, std::size_t s, bool canonical)
      : grid_(std::move(grid)), t_(t), s_(s), canonical_(canonical) {}

  friend Pda column_subarray(const Pda&, std::span<const std::size_t>);

  Grid grid_;
  std::size_t t_ = 0;
  std::size_t s_ = 0;
  bool canonical_ = true;
};

// ---------------------------------------------------------------------------
// Text format
//
//   # comment
//   F K
//   <F lines of K tokens, each "*" or a positive decimal integer>

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    out.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

inline std::optional<std::uint64_t> parse_positive(std::string_view s) {
  if (s.empty() || s.size() > 18) return std::nullopt;
  std::uint64_t v = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') return std::nullopt;
    v = v * 10 + static_cast<std::uint64_t>(ch - '0');
  }
  if (v == 0) return std::nullopt;
  return v;
}

}  // namespace detail

// Syntax only; no PDA rules are checked.
inline Grid parse_grid(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    const auto first = line.find_first_not_of(" \t");
    if (first != std::string_view::npos && line[first] != '#')
      lines.emplace_back(line_no, line);
    if (end == text.size()) break;
    pos = end + 1;
  }
  for (const auto& [no, line] : lines)
    for (char ch : line)
      if (static_cast<unsigned char>(ch) > 0x7e)
        throw ParseError(no, 0, "non-ASCII byte");

  if (lines.empty()) throw ParseError(line_no, 0, "missing \"F K\" header");
  const auto header = detail::tokenize(lines[0].second);
  if (header.size() != 2)
    throw ParseError(lines[0].first, 0, "header must be \"F K\"");
  const auto f = detail::parse_positive(header[0].text);
  if (!f)
    throw ParseError(lines[0].first, header[0].column,
                     "row count must be a positive integer");
  const auto k = detail::parse_positive(header[1].text);
  if (!k)
    throw ParseError(lines[0].first, header[1].column,
                     "column count must be a positive integer");
  if (lines.size() - 1 != *f)
    throw ParseError(lines.back().first, 0,
                     "expected " + std::to_string(*f) + " rows, found " +
                         std::to_string(lines.size() - 1));

  Grid grid(*f, *k);
  for (std::size_t r = 0; r < *f; ++r) {
    const auto [no, line] = lines[r + 1];
    const auto tokens = detail::tokenize(line);
    if (tokens.size() != *k)
      throw ParseError(no, 0,
                       "expected " + std::to_string(*k) + " entries, found " +
                           std::to_string(tokens.size()));
    for (std::size_t c = 0; c < *k; ++c) {
      const auto& tok = tokens[c];
      if (tok.text == "*") continue;
      const auto v = detail::parse_positive(tok.text);
      if (!v || *v > UINT32_MAX)
        throw ParseError(no, tok.column,
                         "entry must be '*' or a positive integer, got '" +
                             std::string(tok.text) + "'");
      grid.at(r, c) = Entry::ordinary(static_cast<std::uint32_t>(*v));
    }
  }
  return grid;
}

// Parses, checks rules a) and b) on the given labels, then canonicalizes.
inline Pda parse_pda(std::string_view text) { return Pda::from_grid(parse_grid(text)); }

inline std::string render_grid(const Grid& grid) {
  std::string out =
      std::to_string(grid.rows()) + " " + std::to_string(grid.cols()) + "\n";
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    for (std::size_t c = 0; c < grid.cols(); ++c) {
      if (c) out += ' ';
      const Entry e = grid.at(r, c);
      out += e.is_star() ? std::string("*") : std::to_string(e.symbol());
    }
    out += '\n';
  }
  return out;
}

inline std::string render_pda(const Pda& pda) { return render_grid(pda.grid()); }

// ---------------------------------------------------------------------------
// Statistics

struct PdaStats {
  std::size_t k = 0, f = 0, t = 0, s = 0;
  std::size_t tau = 0;                          // minimum Stars per row
  std::map<std::size_t, std::size_t> s_t;       // multiplicity -> #symbols
  std::map<std::size_t, Rational> theta;        // multiplicity -> fraction
  std::optional<std::size_t> regular_g;
  Rational storage_load;                        // T/F
  bool is_comp = false;
};

inline PdaStats pda_stats(const Pda& pda) {
  PdaStats st;
  st.k = pda.k();
  st.f = pda.f();
  st.t = pda.t();
  st.s = pda.s();
  st.tau = pda.k();
  for (std::size_t r = 0; r < pda.f(); ++r) {
    const auto row = pda.grid().row(r);
    const auto stars = static_cast<std::size_t>(
        std::count_if(row.begin(), row.end(), [](Entry e) { return e.is_star(); }));
    st.tau = std::min(st.tau, stars);
  }
  st.is_comp = st.tau >= 1;

  for (const auto& [symbol, cells] : symbol_occurrences(pda.grid()))
    ++st.s_t[cells.size()];
  const std::size_t ordinary = st.k * st.f - st.t;
  for (const auto& [mult, count] : st.s_t)
    st.theta[mult] = make_rational(BigInt(count * mult), BigInt(ordinary));
  if (st.s_t.size() == 1) st.regular_g = st.s_t.begin()->first;
  st.storage_load = make_rational(BigInt(st.t), BigInt(st.f));
  return st;
}

// ---------------------------------------------------------------------------
// Column subarray

// Keeps the listed columns (1-based, ascending) and the parent's symbol
// labels. Throws EmptyStarRow if some row keeps no Star.
inline Pda column_subarray(const Pda& pda, std::span<const std::size_t> nodes) {
  if (nodes.empty()) throw RangeError("column_subarray: empty node set");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] < 1 || nodes[i] > pda.k())
      throw RangeError("column_subarray: node " + std::to_string(nodes[i]) +
                       " outside 1.." + std::to_string(pda.k()));
    if (i && nodes[i] <= nodes[i - 1])
      throw RangeError("column_subarray: nodes must be strictly ascending");
  }
  Grid sub(pda.f(), nodes.size());
  std::size_t t = 0;
  for (std::size_t r = 0; r < pda.f(); ++r) {
    bool has_star = false;
    for (std::size_t c = 0; c < nodes.size(); ++c) {
      sub.at(r, c) = pda.at(r, nodes[c] - 1);
      has_star |= sub.at(r, c).is_star();
    }
    if (!has_star) throw EmptyStarRow(r);
  }
  for (Entry e : sub.cells()) t += e.is_star() ? 1 : 0;
  // Deleting columns cannot break a) or b).
  const auto s = symbol_occurrences(sub).size();
  const bool canonical = validate_pda(sub).ok();
  return Pda(std::move(sub), t, s, canonical);
}

}  // namespace compda
