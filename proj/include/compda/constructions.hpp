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

// PDA families: MAN (rows are i-subsets of the nodes), the two grid
// families P1/P2 over Z_q^m, and the all-Star array.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "compda/combinatorics.hpp"
#include "compda/errors.hpp"
#include "compda/pda.hpp"

namespace compda {

struct ManParams {
  std::size_t k_nodes;
  std::size_t i;
};

struct GridFamilyParams {
  std::size_t q;
  std::size_t m;
  std::size_t k_nodes() const { return q * m; }
};

inline Pda man_pda(std::size_t k_nodes, std::size_t i) {
  if (k_nodes < 1 || i < 1 || i > k_nodes)
    throw RangeError("man_pda needs 1 <= i <= K (got K=" +
                     std::to_string(k_nodes) + ", i=" + std::to_string(i) + ")");
  const auto rows = combinations(k_nodes, i);
  Grid grid(rows.size(), k_nodes);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& subset = rows[r];
    for (std::size_t node = 1; node <= k_nodes; ++node) {
      if (std::binary_search(subset.begin(), subset.end(), node)) continue;
      std::vector<std::size_t> bigger = subset;
      bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), node), node);
      grid.at(r, node - 1) = Entry::ordinary(
          static_cast<std::uint32_t>(combination_rank(bigger, k_nodes)));
    }
  }
  return Pda::from_grid(grid);
}

namespace detail {

inline void check_grid_family(const GridFamilyParams& p, const char* name) {
  if (p.q < 2 || p.m < 1)
    throw RangeError(std::string(name) + " needs q >= 2 and m >= 1 (got q=" +
                     std::to_string(p.q) + ", m=" + std::to_string(p.m) + ")");
  // q^m rows at most; keep it addressable.
  std::uint64_t size = 1;
  for (std::size_t j = 0; j < p.m; ++j) {
    size *= p.q;
    if (size > (1u << 24))
      throw RangeError(std::string(name) + ": q^m too large");
  }
}

// All vectors in [0..q-1]^m, lexicographic.
inline std::vector<std::vector<std::size_t>> all_vectors(std::size_t q,
                                                         std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> v(m, 0);
  while (true) {
    out.push_back(v);
    std::size_t pos = m;
    while (pos > 0 && v[pos - 1] == q - 1) v[--pos] = 0;
    if (pos == 0) return out;
    ++v[pos - 1];
  }
}

inline std::size_t digit_sum_mod(const std::vector<std::size_t>& v,
                                 std::size_t q) {
  std::size_t s = 0;
  for (auto x : v) s += x;
  return s % q;
}

// Column (i, j), i in [0..m-1], j in [0..q-1] -> 0-based column i*q + j.
inline std::size_t column_of(std::size_t i, std::size_t j, std::size_t q) {
  return i * q + j;
}

// Post-check shared by the grid families. A mismatch is a construction bug.
inline void check_family_parameters(const Pda& pda, std::size_t f,
                                    std::size_t t, std::size_t s,
                                    std::size_t g, std::size_t tau,
                                    const char* name) {
  const auto st = pda_stats(pda);
  if (pda.f() != f || pda.t() != t || pda.s() != s || st.regular_g != g ||
      st.tau != tau)
    throw InternalError(std::string(name) + ": constructed array has wrong parameters");
}

inline std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp--) r *= base;
  return r;
}

}  // namespace detail

// m-regular (mq, q^{m-1}, m q^{m-1}, (q-1) q^{m-1}), minimum storage m.
// Rows: b in Z_q^m with sum(b) = 0 mod q. Entry at column (i, j) is a Star
// iff b_i = j, otherwise the symbol named by b with b_i replaced by j.
inline Pda p1_pda(std::size_t q, std::size_t m) {
  const GridFamilyParams p{q, m};
  detail::check_grid_family(p, "p1_pda");
  std::vector<std::vector<std::size_t>> rows;
  for (auto& b : detail::all_vectors(q, m))
    if (detail::digit_sum_mod(b, q) == 0) rows.push_back(std::move(b));

  std::map<std::vector<std::size_t>, std::uint32_t> label;
  Grid grid(rows.size(), p.k_nodes());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < q; ++j) {
        if (rows[r][i] == j) continue;
        auto name = rows[r];
        name[i] = j;
        auto [it, _] = label.try_emplace(name, static_cast<std::uint32_t>(label.size() + 1));
        grid.at(r, detail::column_of(i, j, q)) = Entry::ordinary(it->second);
      }
    }
  }
  Pda pda = Pda::from_grid(grid);
  const std::size_t qm1 = detail::ipow(q, m - 1);
  detail::check_family_parameters(pda, qm1, m * qm1, (q - 1) * qm1, m, m, "p1_pda");
  return pda;
}

// m(q-1)-regular (mq, (q-1) q^{m-1}, m (q-1)^2 q^{m-1}, q^{m-1}), minimum
// storage m(q-1). Rows: b with sum(b) != 0 mod q. Column (i, j) is a Star iff
// b_i != j; the ordinary entry at (i, b_i) is the symbol named by b with b_i
// replaced so that the coordinate sum becomes 0 mod q.
inline Pda p2_pda(std::size_t q, std::size_t m) {
  const GridFamilyParams p{q, m};
  detail::check_grid_family(p, "p2_pda");
  std::vector<std::vector<std::size_t>> rows;
  for (auto& b : detail::all_vectors(q, m))
    if (detail::digit_sum_mod(b, q) != 0) rows.push_back(std::move(b));

  std::map<std::vector<std::size_t>, std::uint32_t> label;
  Grid grid(rows.size(), p.k_nodes());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::size_t sum = detail::digit_sum_mod(rows[r], q);
    for (std::size_t i = 0; i < m; ++i) {
      auto name = rows[r];
      name[i] = (rows[r][i] + q - sum) % q;
      auto [it, _] = label.try_emplace(name, static_cast<std::uint32_t>(label.size() + 1));
      grid.at(r, detail::column_of(i, rows[r][i], q)) = Entry::ordinary(it->second);
    }
  }
  Pda pda = Pda::from_grid(grid);
  const std::size_t qm1 = detail::ipow(q, m - 1);
  detail::check_family_parameters(pda, (q - 1) * qm1, m * (q - 1) * (q - 1) * qm1,
                                  qm1, m * (q - 1), m * (q - 1), "p2_pda");
  return pda;
}

inline Pda full_star_pda(std::size_t k_nodes, std::size_t f_rows) {
  if (k_nodes < 1 || f_rows < 1)
    throw RangeError("full_star_pda needs K >= 1 and F >= 1");
  return Pda::from_grid(Grid(f_rows, k_nodes));
}

}  // namespace compda
