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

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "compda/errors.hpp"

namespace compda {

// C(n,k) in 64 bits; throws RangeError on overflow.
inline std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > UINT64_MAX) throw RangeError("binomial overflows 64 bits");
  }
  return static_cast<std::uint64_t>(result);
}

// Calls f(const std::vector<std::size_t>&) for every size-k subset of
// {1..n} in lexicographic order. Elements are ascending.
template <typename F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> c(k);
  std::iota(c.begin(), c.end(), std::size_t{1});
  while (true) {
    f(static_cast<const std::vector<std::size_t>&>(c));
    if (k == 0) return;
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

inline std::vector<std::vector<std::size_t>> combinations(std::size_t n,
                                                          std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  for_each_combination(n, k, [&](const auto& c) { out.push_back(c); });
  return out;
}

// 1-based lexicographic rank of an ascending subset of {1..n}.
inline std::uint64_t combination_rank(std::span<const std::size_t> subset,
                                      std::size_t n) {
  const std::size_t k = subset.size();
  std::uint64_t rank = 1;
  std::size_t prev = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (subset[i] <= prev || subset[i] > n)
      throw RangeError("combination_rank: subset not ascending within 1..n");
    for (std::size_t v = prev + 1; v < subset[i]; ++v)
      rank += choose(n - v, k - i - 1);
    prev = subset[i];
  }
  return rank;
}

inline std::uint64_t lcm_upto(std::uint64_t n) {
  std::uint64_t l = 1;
  for (std::uint64_t i = 2; i <= n; ++i) l = std::lcm(l, i);
  return l;
}

}  // namespace compda
