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

// Synthetic MapReduce job: file contents, map and reduce functions.
//
// Everything is derived from 64-bit FNV-1a in counter mode:
//   stream(header, payload)  = block_0 || block_1 || ...
//   block_j                  = FNV1a64(header || LE64(j) || payload), as LE64
//   file  w_n                = stream(LE64(seed) || LE64(n), "")        W bits
//   IVA   v_{d,n}            = stream(LE64(d) || LE64(n), bytes(w_n))   V bits
//   output u_d               = stream(LE64(d), bytes(v_{d,1}) || ... )  U bits
// Bit strings are serialized LSB-first with the last byte zero padded.
// d and n are 1-based.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "compda/bits.hpp"
#include "compda/errors.hpp"

namespace compda {

inline constexpr std::uint64_t kFnvOffsetBasis = 14695981039346656037ULL;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

class Fnv1a64 {
 public:
  Fnv1a64& update(std::span<const std::uint8_t> bytes) {
    for (std::uint8_t b : bytes) {
      state_ ^= b;
      state_ *= kFnvPrime;
    }
    return *this;
  }
  Fnv1a64& update_le64(std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      state_ ^= static_cast<std::uint8_t>(x >> (8 * i));
      state_ *= kFnvPrime;
    }
    return *this;
  }
  std::uint64_t digest() const { return state_; }

 private:
  std::uint64_t state_ = kFnvOffsetBasis;
};

inline std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) {
  return Fnv1a64().update(bytes).digest();
}

struct JobSpec {
  std::uint64_t n_files = 0;
  std::uint64_t d_functions = 0;
  std::uint64_t w_bits = 64;
  std::uint64_t v_bits = 0;
  std::uint64_t u_bits = 64;
  std::uint64_t seed = 0;
};

inline void check_job(const JobSpec& job) {
  if (job.n_files == 0 || job.d_functions == 0 || job.w_bits == 0 ||
      job.v_bits == 0 || job.u_bits == 0)
    throw RangeError("job needs N, D, W, V, U >= 1");
}

namespace detail {

inline BitString counter_stream(std::span<const std::uint64_t> header,
                                std::span<const std::uint8_t> payload,
                                std::uint64_t nbits) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve((nbits + 63) / 64 * 8);
  for (std::uint64_t j = 0; bytes.size() * 8 < nbits; ++j) {
    Fnv1a64 h;
    for (auto x : header) h.update_le64(x);
    h.update_le64(j).update(payload);
    const std::uint64_t block = h.digest();
    for (int i = 0; i < 8; ++i) bytes.push_back(static_cast<std::uint8_t>(block >> (8 * i)));
  }
  return BitString::from_bytes(bytes, nbits);
}

}  // namespace detail

inline BitString file_contents(const JobSpec& job, std::uint64_t n) {
  const std::uint64_t header[] = {job.seed, n};
  return detail::counter_stream(header, {}, job.w_bits);
}

inline BitString map_iva(const JobSpec& job, std::uint64_t d, std::uint64_t n,
                         const BitString& file) {
  const std::uint64_t header[] = {d, n};
  const auto bytes = file.to_bytes();
  return detail::counter_stream(header, bytes, job.v_bits);
}

// ivas[n-1] = v_{d,n}.
inline BitString reduce_output(const JobSpec& job, std::uint64_t d,
                               std::span<const BitString> ivas) {
  std::vector<std::uint8_t> payload;
  for (const auto& v : ivas) {
    const auto bytes = v.to_bytes();
    payload.insert(payload.end(), bytes.begin(), bytes.end());
  }
  const std::uint64_t header[] = {d};
  return detail::counter_stream(header, payload, job.u_bits);
}

// Ground truth: every output computed directly from every file, ignoring
// placement. Result[d-1] = u_d.
inline std::vector<BitString> reference_oracle(const JobSpec& job) {
  check_job(job);
  std::vector<BitString> files;
  files.reserve(job.n_files);
  for (std::uint64_t n = 1; n <= job.n_files; ++n) files.push_back(file_contents(job, n));
  std::vector<BitString> outputs;
  outputs.reserve(job.d_functions);
  std::vector<BitString> ivas(job.n_files);
  for (std::uint64_t d = 1; d <= job.d_functions; ++d) {
    for (std::uint64_t n = 1; n <= job.n_files; ++n)
      ivas[n - 1] = map_iva(job, d, n, files[n - 1]);
    outputs.push_back(reduce_output(job, d, ivas));
  }
  return outputs;
}

}  // namespace compda
