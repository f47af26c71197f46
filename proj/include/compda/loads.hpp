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

// Closed-form storage/communication loads, evaluated exactly.
//
// Notation: K nodes, Q active nodes, r storage load, C(n,k) binomial with
// C(n,k) = 0 outside 0 <= k <= n.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#include "compda/constructions.hpp"
#include "compda/errors.hpp"
#include "compda/pda.hpp"
#include "compda/rational.hpp"

namespace compda {

struct LoadPair {
  Rational r;  // storage load
  Rational l;  // communication load, fraction of N*D*V bits
  friend bool operator==(const LoadPair&, const LoadPair&) = default;
};

namespace detail {

inline void check_kq(std::size_t k, std::size_t q) {
  if (k < 1 || q < 1 || q > k)
    throw RangeError("need 1 <= Q <= K (got K=" + std::to_string(k) +
                     ", Q=" + std::to_string(q) + ")");
}

inline Rational binom_q(long long n, long long k) { return Rational(binomial(n, k)); }

// Bracketed term of the achieved-load formula for multiplicity t:
// C(K-t, Q-1) + sum_l (1/l) C(t-1, l) C(K-t, Q-l-1).
inline Rational multiplicity_weight(long long k, long long q, long long t) {
  Rational sum = binom_q(k - t, q - 1);
  const long long lo = std::max(1LL, t - k + q - 1);
  const long long hi = std::min(t, q) - 1;
  for (long long l = lo; l <= hi; ++l)
    sum += Rational(binomial(t - 1, l) * binomial(k - t, q - l - 1), l);
  return sum;
}

}  // namespace detail

// Load achieved by running the coded scheme of `pda` with Q active nodes.
// Requires minimum storage number >= K-Q+1.
inline LoadPair achieved_load(const Pda& pda, std::size_t q_active) {
  const std::size_t k = pda.k();
  detail::check_kq(k, q_active);
  const PdaStats st = pda_stats(pda);
  if (st.tau < k - q_active + 1) throw InsufficientTau(st.tau, k - q_active + 1);

  LoadPair out{st.storage_load, 0};
  if (pda.is_trivial()) return out;
  const auto K = static_cast<long long>(k);
  const auto Q = static_cast<long long>(q_active);
  Rational sum = 0;
  for (const auto& [t, theta] : st.theta)
    sum += theta * detail::multiplicity_weight(K, Q, static_cast<long long>(t));
  const Rational star_fraction(BigInt(pda.t()), BigInt(pda.f() * pda.k()));
  out.l = (1 - star_fraction) * sum / detail::binom_q(K - 1, Q - 1);
  return out;
}

// Fundamental tradeoff at an integer storage load r in [K-Q+1, K].
inline Rational optimal_load_at(std::size_t k_nodes, std::size_t q_active,
                                std::size_t r) {
  detail::check_kq(k_nodes, q_active);
  if (r + q_active < k_nodes + 1 || r > k_nodes)
    throw RangeError("optimal_load: r=" + std::to_string(r) + " outside [" +
                     std::to_string(k_nodes - q_active + 1) + ", " +
                     std::to_string(k_nodes) + "]");
  const auto K = static_cast<long long>(k_nodes);
  const auto Q = static_cast<long long>(q_active);
  const auto R = static_cast<long long>(r);
  Rational sum = 0;
  for (long long l = R + Q - K; l <= std::min(R, Q - 1); ++l) {
    if (l < 1) continue;
    sum += Rational(binomial(R, l) * binomial(K - R - 1, Q - l - 1), l);
  }
  return Rational(K - R, K) * sum / detail::binom_q(K - 1, Q - 1);
}

// Lower convex envelope of the integer points; the integer sequence is
// convex, so this is linear interpolation between neighbours.
inline Rational optimal_load(std::size_t k_nodes, std::size_t q_active,
                             const Rational& r) {
  detail::check_kq(k_nodes, q_active);
  const Rational lo_bound(static_cast<long long>(k_nodes - q_active + 1));
  if (r < lo_bound || r > Rational(static_cast<long long>(k_nodes)))
    throw RangeError("optimal_load: r=" + to_string(r) + " outside [" +
                     to_string(lo_bound) + ", " + std::to_string(k_nodes) + "]");
  const BigInt fl = floor_of(r);
  const auto lo = fl.convert_to<std::size_t>();
  if (is_integer(r)) return optimal_load_at(k_nodes, q_active, lo);
  const Rational frac = r - Rational(fl);
  return (1 - frac) * optimal_load_at(k_nodes, q_active, lo) +
         frac * optimal_load_at(k_nodes, q_active, lo + 1);
}

// Z(u) = sum_{l=u+Q-K}^{min(u,Q)} (Q-l)/(Q l) C(u,l) C(K-u,Q-l).
inline Rational z_value(std::size_t k_nodes, std::size_t q_active, std::size_t u) {
  detail::check_kq(k_nodes, q_active);
  if (u + q_active < k_nodes + 1 || u > k_nodes)
    throw RangeError("z_value: u outside [K-Q+1, K]");
  const auto K = static_cast<long long>(k_nodes);
  const auto Q = static_cast<long long>(q_active);
  const auto U = static_cast<long long>(u);
  Rational z = 0;
  for (long long l = std::max(1LL, U + Q - K); l <= std::min(U, Q); ++l)
    z += Rational(BigInt(Q - l) * binomial(U, l) * binomial(K - U, Q - l), Q * l);
  return z;
}

// U(u) = C(K-u, Q-1) + sum_{l=max(1,u-K+Q-1)}^{min(u,Q)-1} C(u-1,l) C(K-u,Q-l-1)/l.
inline Rational u_value(std::size_t k_nodes, std::size_t q_active, std::size_t u) {
  detail::check_kq(k_nodes, q_active);
  if (u < 1 || u > k_nodes) throw RangeError("u_value: u outside [1, K]");
  return detail::multiplicity_weight(static_cast<long long>(k_nodes),
                                     static_cast<long long>(q_active),
                                     static_cast<long long>(u));
}

// Fewest rows any Comp-PDA reaching the tradeoff at integer r can have.
inline BigInt optimal_file_complexity(std::size_t k_nodes, std::size_t r) {
  if (k_nodes < 1 || r < 1 || r > k_nodes)
    throw RangeError("optimal_file_complexity needs 1 <= r <= K");
  return binomial(static_cast<long long>(k_nodes), static_cast<long long>(r));
}

// Row count (r/K) (K/min(r,K-r))^{min(r,K-r)} of the low-complexity families.
inline Rational grid_family_file_complexity(std::size_t k_nodes, std::size_t r) {
  if (r < 1 || r >= k_nodes) throw RangeError("need 1 <= r <= K-1");
  const std::size_t e = std::min(r, k_nodes - r);
  Rational base(static_cast<long long>(k_nodes), static_cast<long long>(e));
  Rational f(static_cast<long long>(r), static_cast<long long>(k_nodes));
  for (std::size_t j = 0; j < e; ++j) f *= base;
  return f;
}

// ---------------------------------------------------------------------------
// Low-complexity families versus the optimum.

enum class GridFamily { p1, p2 };

struct Prop1Report {
  std::size_t k_nodes = 0, r = 0, q_active = 0;
  GridFamily family = GridFamily::p1;
  std::size_t q = 0, m = 0;  // family parameters
  Rational c;                // r/K
  Rational l_achieved, l_optimal, l_ratio, alpha;
  BigInt f_construction, f_optimal;
  Rational f_family, f_ratio;
  double a_q = 0, b_q = 0, beta = 0;
  bool alpha_in_range = false;
  bool beta_in_range = false;
};

inline constexpr double beta_upper_bound() {
  return 2.5066282746310002 * 7.3890560989306502;  // sqrt(2 pi) e^2
}

inline Prop1Report prop1_check(std::size_t k_nodes, std::size_t r,
                               std::size_t q_active) {
  detail::check_kq(k_nodes, q_active);
  if (r < 1 || r >= k_nodes || r + q_active < k_nodes + 1)
    throw RangeError("prop1_check needs K-Q+1 <= r <= K-1 (got K=" +
                     std::to_string(k_nodes) + ", r=" + std::to_string(r) +
                     ", Q=" + std::to_string(q_active) + ")");
  Prop1Report rep;
  rep.k_nodes = k_nodes;
  rep.r = r;
  rep.q_active = q_active;
  rep.c = Rational(static_cast<long long>(r), static_cast<long long>(k_nodes));

  auto admissible = [&](std::size_t q) { return q >= 2 && q + 1 <= k_nodes; };
  if (k_nodes % r == 0 && admissible(k_nodes / r)) {
    rep.family = GridFamily::p1;
    rep.q = k_nodes / r;
    rep.m = r;
  } else if (k_nodes % (k_nodes - r) == 0 && admissible(k_nodes / (k_nodes - r))) {
    rep.family = GridFamily::p2;
    rep.q = k_nodes / (k_nodes - r);
    rep.m = k_nodes - r;
  } else {
    throw NoMatchingFamily("no P1/P2 instance for K=" + std::to_string(k_nodes) +
                           ", r=" + std::to_string(r) +
                           ": need r/K in {1/q, (q-1)/q} with q in [2, K-1]");
  }

  const Pda pda = rep.family == GridFamily::p1 ? p1_pda(rep.q, rep.m)
                                               : p2_pda(rep.q, rep.m);
  rep.l_achieved = achieved_load(pda, q_active).l;
  rep.l_optimal = optimal_load_at(k_nodes, q_active, r);
  rep.l_ratio = rep.l_achieved / rep.l_optimal;
  rep.alpha = Rational(static_cast<long long>(r)) * (rep.l_ratio - 1);
  rep.f_construction = pda.f();
  rep.f_family = grid_family_file_complexity(k_nodes, r);
  rep.f_optimal = optimal_file_complexity(k_nodes, r);
  rep.f_ratio = Rational(rep.f_construction, rep.f_optimal);

  const double q = static_cast<double>(rep.q);
  const double c = rep.c.convert_to<double>();
  rep.a_q = std::sqrt(q - 1) / (c * q);
  rep.b_q = std::pow(q / (q - 1), (q - 1) / q);
  const double scale = rep.a_q * std::sqrt(static_cast<double>(k_nodes)) *
                       std::pow(rep.b_q, -static_cast<double>(k_nodes));
  rep.beta = rep.f_ratio.convert_to<double>() / scale;
  rep.alpha_in_range = rep.alpha >= 0 && rep.alpha <= 2;
  rep.beta_in_range = rep.beta >= 0 && rep.beta <= beta_upper_bound();
  return rep;
}

}  // namespace compda
