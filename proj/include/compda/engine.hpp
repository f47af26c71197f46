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

// Bit-exact execution of the coded MapReduce scheme built from a Comp-PDA.
//
// Placement: node k stores batch i iff column k has a Star in row i. It is
// fixed from the full array, before the active set is known.
//
// For an active set Q the scheme works on the column subarray A^Q:
//   - a symbol occurring once in A^Q at (i, j) is sent uncoded by the
//     smallest active node holding batch i (singleton owner);
//   - a symbol occurring g >= 2 times: each occurrence's block U_{i,j} is cut
//     into g-1 equal bit ranges labelled by the other occurrence nodes in
//     ascending order, and every occurrence node k sends the XOR of the
//     ranges labelled k.
// Block U_{i,j} is the concatenation of v_{d,n} for d assigned to node j and
// n in batch i, ascending in (d, n).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "compda/bits.hpp"
#include "compda/combinatorics.hpp"
#include "compda/errors.hpp"
#include "compda/loads.hpp"
#include "compda/pda.hpp"
#include "compda/rational.hpp"
#include "compda/workload.hpp"

namespace compda {

// ---------------------------------------------------------------------------
// Placement

struct Placement {
  std::size_t k_nodes = 0;
  std::size_t f_batches = 0;
  std::uint64_t n_files = 0;
  std::uint64_t files_per_batch = 0;  // eta = N/F
  std::vector<std::vector<std::size_t>> batches;  // [node-1] -> 0-based batches

  bool stores(std::size_t node, std::size_t batch) const {
    const auto& b = batches[node - 1];
    return std::binary_search(b.begin(), b.end(), batch);
  }

  // 1-based file ids of a batch.
  std::vector<std::uint64_t> batch_files(std::size_t batch) const {
    std::vector<std::uint64_t> out(files_per_batch);
    std::iota(out.begin(), out.end(), batch * files_per_batch + 1);
    return out;
  }

  std::vector<std::uint64_t> files_of(std::size_t node) const {
    std::vector<std::uint64_t> out;
    for (auto b : batches[node - 1]) {
      const auto files = batch_files(b);
      out.insert(out.end(), files.begin(), files.end());
    }
    return out;
  }

  Rational storage_load() const {
    std::uint64_t stored = 0;
    for (const auto& b : batches) stored += b.size() * files_per_batch;
    return make_rational(BigInt(stored), BigInt(n_files));
  }
};

inline Placement build_placement(const Pda& pda, const JobSpec& job) {
  check_job(job);
  if (job.n_files % pda.f() != 0)
    throw DivisibilityError(pda.f(), job.n_files,
                            "F=" + std::to_string(pda.f()) +
                                " must divide the file count N=" +
                                std::to_string(job.n_files));
  Placement p;
  p.k_nodes = pda.k();
  p.f_batches = pda.f();
  p.n_files = job.n_files;
  p.files_per_batch = job.n_files / pda.f();
  p.batches.resize(pda.k());
  for (std::size_t r = 0; r < pda.f(); ++r)
    for (std::size_t c = 0; c < pda.k(); ++c)
      if (pda.at(r, c).is_star()) p.batches[c].push_back(r);
  return p;
}

// u -> number of files stored at exactly u nodes.
inline std::map<std::size_t, std::uint64_t> storage_profile(const Placement& p) {
  std::map<std::size_t, std::uint64_t> profile;
  std::vector<std::size_t> copies(p.f_batches, 0);
  for (const auto& node : p.batches)
    for (auto b : node) ++copies[b];
  for (auto c : copies) profile[c] += p.files_per_batch;
  return profile;
}

// ---------------------------------------------------------------------------
// Active-set plan

// One cell of the array seen from the scheme: batch row and 1-based node.
struct Slot {
  std::size_t batch;
  std::size_t node;
  friend bool operator==(const Slot&, const Slot&) = default;
  friend auto operator<=>(const Slot&, const Slot&) = default;
};

struct ActiveSetPlan {
  std::vector<std::size_t> active;  // 1-based, ascending
  Pda subarray;                     // keeps parent labels
  std::map<std::uint32_t, std::vector<Slot>> occurrences{};
  std::map<std::uint32_t, std::size_t> singleton_owner{};
  std::map<std::size_t, std::vector<std::uint32_t>> singleton_symbols{};  // I_k
  std::map<std::size_t, std::vector<std::uint32_t>> coded_symbols{};      // A_k
  std::map<Slot, std::vector<std::size_t>> split_labels{};
  std::map<std::size_t, std::vector<std::uint64_t>> reduce_assignment{};

  std::size_t q() const { return active.size(); }
};

inline ActiveSetPlan plan_active_set(const Pda& pda,
                                     std::span<const std::size_t> active,
                                     const JobSpec& job) {
  check_job(job);
  ActiveSetPlan plan{.active = std::vector<std::size_t>(active.begin(), active.end()),
                     .subarray = column_subarray(pda, active)};
  const std::size_t q = plan.q();
  if (job.d_functions % q != 0)
    throw DivisibilityError(q, job.d_functions,
                            "Q=" + std::to_string(q) +
                                " must divide the function count D=" +
                                std::to_string(job.d_functions));

  const Pda& sub = plan.subarray;
  for (const auto& [symbol, cells] : symbol_occurrences(sub.grid()))
    for (const Cell& cell : cells)
      plan.occurrences[symbol].push_back({cell.row, plan.active[cell.col]});

  for (const auto& [symbol, slots] : plan.occurrences) {
    if (slots.size() == 1) {
      const std::size_t row = slots.front().batch;
      std::optional<std::size_t> owner;
      for (std::size_t c = 0; c < q && !owner; ++c)
        if (sub.at(row, c).is_star()) owner = plan.active[c];
      if (!owner) throw EmptyStarRow(row);
      plan.singleton_owner[symbol] = *owner;
      plan.singleton_symbols[*owner].push_back(symbol);
      continue;
    }
    for (const Slot& slot : slots) {
      plan.coded_symbols[slot.node].push_back(symbol);
      auto& labels = plan.split_labels[slot];
      for (const Slot& other : slots)
        if (other.node != slot.node) labels.push_back(other.node);
      std::sort(labels.begin(), labels.end());
    }
  }

  for (std::size_t p = 0; p < q; ++p) {
    auto& fns = plan.reduce_assignment[plan.active[p]];
    for (std::uint64_t d = p + 1; d <= job.d_functions; d += q) fns.push_back(d);
  }
  return plan;
}

// ---------------------------------------------------------------------------
// Transcript

struct Signal {
  std::size_t sender;
  std::uint32_t symbol;
  BitString payload;
  friend bool operator==(const Signal&, const Signal&) = default;
};

struct TranscriptReport {
  std::vector<std::size_t> active;
  std::vector<Signal> signals;  // by sender, then symbol
  std::map<std::size_t, std::uint64_t> node_bits;
  std::map<std::uint32_t, std::uint64_t> symbol_bits;
  std::uint64_t total_bits = 0;
  // node -> function -> reduced output
  std::map<std::size_t, std::map<std::uint64_t, BitString>> outputs;
  bool reference_match = false;
};

// Bits in one block U_{i,j}: eta * (D/Q) * V.
inline std::uint64_t block_bits(const JobSpec& job, std::uint64_t eta, std::size_t q) {
  return eta * (job.d_functions / q) * job.v_bits;
}

// Smallest V' >= V with lcm(1..Q-1) | eta (D/Q) V'.
inline std::uint64_t minimal_iva_bits(const JobSpec& job, std::uint64_t eta,
                                      std::size_t q) {
  const std::uint64_t lcm = lcm_upto(q - 1);
  const std::uint64_t step = lcm / std::gcd(lcm, eta * (job.d_functions / q));
  return (job.v_bits + step - 1) / step * step;
}

namespace detail {

// IVAs one node computed in the map phase, indexed by (d, n).
class NodeStore {
 public:
  NodeStore(const JobSpec& job, const Placement& placement, std::size_t node,
            std::span<const BitString> files)
      : n_files_(job.n_files), ivas_(job.d_functions * job.n_files) {
    for (auto n : placement.files_of(node))
      for (std::uint64_t d = 1; d <= job.d_functions; ++d)
        ivas_[index(d, n)] = map_iva(job, d, n, files[n - 1]);
  }

  const std::optional<BitString>& get(std::uint64_t d, std::uint64_t n) const {
    return ivas_[index(d, n)];
  }

 private:
  std::size_t index(std::uint64_t d, std::uint64_t n) const {
    return (d - 1) * n_files_ + (n - 1);
  }
  std::uint64_t n_files_;
  std::vector<std::optional<BitString>> ivas_;
};

inline BitString assemble_block(const NodeStore& store, const Placement& placement,
                                const std::vector<std::uint64_t>& functions,
                                std::size_t batch) {
  BitString block;
  for (auto d : functions) {
    for (auto n : placement.batch_files(batch)) {
      const auto& v = store.get(d, n);
      if (!v) throw InternalError("node lacks IVA v_{" + std::to_string(d) + "," +
                                  std::to_string(n) + "} needed for a block");
      block.append(*v);
    }
  }
  return block;
}

inline std::size_t label_position(const std::vector<std::size_t>& labels,
                                  std::size_t node) {
  const auto it = std::find(labels.begin(), labels.end(), node);
  if (it == labels.end()) throw InternalError("split label missing");
  return static_cast<std::size_t>(it - labels.begin());
}

}  // namespace detail

// Shared inputs for many transcripts of one (pda, job).
struct SchemeContext {
  Pda pda;
  JobSpec job;
  Placement placement;
  std::vector<BitString> files;
  std::vector<BitString> reference;

  SchemeContext(const Pda& p, const JobSpec& j)
      : pda(p), job(j), placement(build_placement(p, j)), reference(reference_oracle(j)) {
    files.reserve(job.n_files);
    for (std::uint64_t n = 1; n <= job.n_files; ++n) files.push_back(file_contents(job, n));
  }
};

inline TranscriptReport run_transcript(const SchemeContext& ctx,
                                       std::span<const std::size_t> active) {
  const JobSpec& job = ctx.job;
  const Placement& placement = ctx.placement;
  const ActiveSetPlan plan = plan_active_set(ctx.pda, active, job);
  const std::size_t q = plan.q();
  const std::uint64_t eta = placement.files_per_batch;
  const std::uint64_t bits = block_bits(job, eta, q);
  const std::uint64_t lcm = lcm_upto(q - 1);
  if (bits % lcm != 0)
    throw DivisibilityError(
        lcm, bits,
        "lcm(1..Q-1)=" + std::to_string(lcm) + " must divide eta*(D/Q)*V=" +
            std::to_string(bits) + " so sub-IVA splits land on bit boundaries",
        minimal_iva_bits(job, eta, q));

  // Map.
  std::map<std::size_t, detail::NodeStore> stores;
  for (auto k : plan.active) stores.try_emplace(k, job, placement, k, ctx.files);

  TranscriptReport rep;
  rep.active = plan.active;

  // Shuffle.
  for (auto k : plan.active) {
    const auto& store = stores.at(k);
    std::vector<std::uint32_t> symbols;
    if (auto it = plan.singleton_symbols.find(k); it != plan.singleton_symbols.end())
      symbols.insert(symbols.end(), it->second.begin(), it->second.end());
    if (auto it = plan.coded_symbols.find(k); it != plan.coded_symbols.end())
      symbols.insert(symbols.end(), it->second.begin(), it->second.end());
    std::sort(symbols.begin(), symbols.end());

    for (auto s : symbols) {
      const auto& slots = plan.occurrences.at(s);
      BitString payload;
      if (slots.size() == 1) {
        const Slot target = slots.front();
        payload = detail::assemble_block(store, placement,
                                         plan.reduce_assignment.at(target.node),
                                         target.batch);
      } else {
        const std::uint64_t part = bits / (slots.size() - 1);
        payload = BitString(part);
        for (const Slot& slot : slots) {
          if (slot.node == k) continue;
          const auto pos = detail::label_position(plan.split_labels.at(slot), k);
          payload ^= detail::assemble_block(store, placement,
                                            plan.reduce_assignment.at(slot.node),
                                            slot.batch)
                         .slice(pos * part, part);
        }
      }
      rep.node_bits[k] += payload.size();
      rep.symbol_bits[s] += payload.size();
      rep.total_bits += payload.size();
      rep.signals.push_back({k, s, std::move(payload)});
    }
  }

  std::map<std::pair<std::size_t, std::uint32_t>, const BitString*> inbox;
  for (const auto& sig : rep.signals) inbox[{sig.sender, sig.symbol}] = &sig.payload;
  auto received = [&](std::size_t sender, std::uint32_t s) -> const BitString& {
    const auto it = inbox.find({sender, s});
    if (it == inbox.end()) throw InternalError("expected signal was never sent");
    return *it->second;
  };

  // Reduce.
  bool all_match = true;
  for (std::size_t col = 0; col < q; ++col) {
    const std::size_t k = plan.active[col];
    const auto& store = stores.at(k);
    const auto& functions = plan.reduce_assignment.at(k);
    // ivas[fi][n-1] for functions[fi].
    std::vector<std::vector<BitString>> ivas(functions.size(),
                                             std::vector<BitString>(job.n_files));
    for (std::size_t batch = 0; batch < placement.f_batches; ++batch) {
      const Entry e = plan.subarray.at(batch, col);
      BitString block;
      if (e.is_star()) {
        block = detail::assemble_block(store, placement, functions, batch);
      } else {
        const auto& slots = plan.occurrences.at(e.symbol());
        if (slots.size() == 1) {
          block = received(plan.singleton_owner.at(e.symbol()), e.symbol());
        } else {
          const Slot mine{batch, k};
          const std::uint64_t part = bits / (slots.size() - 1);
          for (auto sender : plan.split_labels.at(mine)) {
            BitString piece = received(sender, e.symbol());
            for (const Slot& other : slots) {
              if (other == mine || other.node == sender) continue;
              const auto pos = detail::label_position(plan.split_labels.at(other), sender);
              piece ^= detail::assemble_block(store, placement,
                                              plan.reduce_assignment.at(other.node),
                                              other.batch)
                           .slice(pos * part, part);
            }
            block.append(piece);
          }
        }
      }
      if (block.size() != bits) throw InternalError("decoded block has wrong length");
      const auto batch_files = placement.batch_files(batch);
      for (std::size_t fi = 0; fi < functions.size(); ++fi)
        for (std::size_t x = 0; x < batch_files.size(); ++x)
          ivas[fi][batch_files[x] - 1] =
              block.slice((fi * eta + x) * job.v_bits, job.v_bits);
    }
    for (std::size_t fi = 0; fi < functions.size(); ++fi) {
      const auto d = functions[fi];
      auto out = reduce_output(job, d, ivas[fi]);
      all_match &= (out == ctx.reference[d - 1]);
      rep.outputs[k].emplace(d, std::move(out));
    }
  }
  rep.reference_match = all_match;
  return rep;
}

inline TranscriptReport run_transcript(const Pda& pda, const JobSpec& job,
                                       std::span<const std::size_t> active) {
  const SchemeContext ctx(pda, job);
  return run_transcript(ctx, active);
}

// Bits the scheme sends for one symbol with g_s^Q = g occurrences in A^Q.
inline std::uint64_t expected_symbol_bits(std::size_t g, std::uint64_t block) {
  if (g == 0) return 0;
  if (g == 1) return block;
  return g * (block / (g - 1));
}

// ---------------------------------------------------------------------------
// Load measurement

struct Exhaustive {};
struct Sampled {
  std::size_t count = 0;
  std::uint64_t seed = 0;
};
using MeasureMode = std::variant<Exhaustive, Sampled>;

struct ActiveSetResult {
  std::vector<std::size_t> active;
  std::uint64_t total_bits = 0;
  bool reference_match = false;
};

struct LoadReport {
  std::size_t q_active = 0;
  bool exhaustive = true;
  Rational r_measured;
  Rational l_measured;
  std::vector<ActiveSetResult> per_active_set;
  LoadPair closed_form;
  bool match = false;                 // l_measured == closed_form.l
  bool all_reference_match = false;   // every node of every set decoded right
};

// Draws `count` active sets (with replacement across draws) reproducibly.
inline std::vector<std::vector<std::size_t>> sample_active_sets(std::size_t k,
                                                                std::size_t q,
                                                                Sampled mode) {
  std::mt19937_64 rng(mode.seed);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t draw = 0; draw < mode.count; ++draw) {
    std::vector<std::size_t> nodes(k);
    std::iota(nodes.begin(), nodes.end(), std::size_t{1});
    for (std::size_t i = 0; i < q; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng() % (k - i));
      std::swap(nodes[i], nodes[j]);
    }
    nodes.resize(q);
    std::sort(nodes.begin(), nodes.end());
    out.push_back(std::move(nodes));
  }
  return out;
}

// Runs the scheme over active sets of size Q and averages the shuffled bits.
// Transcripts are independent, so `threads` > 1 runs them concurrently; the
// aggregate does not depend on scheduling.
inline LoadReport measure_loads(const Pda& pda, const JobSpec& job,
                                std::size_t q_active,
                                MeasureMode mode = Exhaustive{},
                                std::size_t threads = 1) {
  LoadReport rep;
  rep.q_active = q_active;
  rep.closed_form = achieved_load(pda, q_active);
  const SchemeContext ctx(pda, job);
  rep.r_measured = ctx.placement.storage_load();

  std::vector<std::vector<std::size_t>> sets;
  if (const auto* sampled = std::get_if<Sampled>(&mode)) {
    if (sampled->count == 0) throw RangeError("sample mode needs count >= 1");
    rep.exhaustive = false;
    sets = sample_active_sets(pda.k(), q_active, *sampled);
  } else {
    sets = combinations(pda.k(), q_active);
  }

  rep.per_active_set.resize(sets.size());
  auto work = [&](std::size_t idx) {
    const auto tr = run_transcript(ctx, sets[idx]);
    rep.per_active_set[idx] = {sets[idx], tr.total_bits, tr.reference_match};
  };
  threads = std::max<std::size_t>(1, std::min(threads, sets.size()));
  if (threads == 1) {
    for (std::size_t i = 0; i < sets.size(); ++i) work(i);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    {
      std::vector<std::jthread> pool;
      for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          try {
            for (std::size_t i = t; i < sets.size(); i += threads) work(i);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  BigInt total = 0;
  rep.all_reference_match = true;
  for (const auto& r : rep.per_active_set) {
    total += r.total_bits;
    rep.all_reference_match &= r.reference_match;
  }
  const BigInt denom = BigInt(sets.size()) * job.n_files * job.d_functions * job.v_bits;
  rep.l_measured = make_rational(total, denom);
  rep.match = rep.l_measured == rep.closed_form.l;
  return rep;
}

}  // namespace compda
