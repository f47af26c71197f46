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


#include <gtest/gtest.h>

#include <random>
#include <string>

#include "compda/bits.hpp"
#include "compda/workload.hpp"

namespace compda {
namespace {

std::string hex(const BitString& b) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (auto byte : b.to_bytes()) {
    s += digits[byte >> 4];
    s += digits[byte & 15];
  }
  return s;
}

std::span<const std::uint8_t> bytes_of(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

TEST(Fnv1a64, PublishedVectors) {
  EXPECT_EQ(fnv1a64(bytes_of("")), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64(bytes_of("a")), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a64(bytes_of("foobar")), 0x85944171f73967e8ULL);
}

TEST(BitString, AppendSliceRoundTrip) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t a = rng() % 150, b = rng() % 150;
    BitString x(a), y(b);
    for (std::size_t i = 0; i < a; ++i) x.set(i, rng() & 1);
    for (std::size_t i = 0; i < b; ++i) y.set(i, rng() & 1);
    BitString z = x;
    z.append(y);
    ASSERT_EQ(z.size(), a + b);
    EXPECT_EQ(z.slice(0, a), x);
    EXPECT_EQ(z.slice(a, b), y);
  }
}

TEST(BitString, XorIsInvolution) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 300;
    BitString x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x.set(i, rng() & 1);
      y.set(i, rng() & 1);
    }
    EXPECT_EQ((x ^ y) ^ y, x);
    EXPECT_EQ(x ^ x, BitString(n));
  }
}

TEST(BitString, XorRejectsUnequalLengths) {
  BitString a(10), b(11);
  EXPECT_THROW(a ^= b, RangeError);
}

TEST(BitString, FromBytesIsLsbFirstAndMasksTail) {
  const std::uint8_t raw[] = {0x01, 0xff};
  const BitString b = BitString::from_bytes(raw, 12);
  EXPECT_TRUE(b.test(0));
  EXPECT_FALSE(b.test(1));
  EXPECT_TRUE(b.test(8));
  EXPECT_TRUE(b.test(11));
  EXPECT_EQ(b.to_bytes(), (std::vector<std::uint8_t>{0x01, 0x0f}));
}

// Frozen from an independent Python implementation of the byte layout.
TEST(Workload, FrozenStreams) {
  JobSpec job{.n_files = 2, .d_functions = 2, .w_bits = 100, .v_bits = 130,
              .u_bits = 70, .seed = 7};
  const BitString f1 = file_contents(job, 1), f2 = file_contents(job, 2);
  EXPECT_EQ(hex(f2), "6033d4a19318df6f817dc3ac0c");
  EXPECT_EQ(hex(map_iva(job, 2, 1, f1)), "48a63935c7130f55f39f31ff1cb184d502");
  const std::vector<BitString> ivas{map_iva(job, 1, 1, f1), map_iva(job, 1, 2, f2)};
  EXPECT_EQ(hex(reduce_output(job, 1, ivas)), "c6a498283c2720b507");
  EXPECT_EQ(hex(reference_oracle(job)[0]), "c6a498283c2720b507");
}

TEST(Workload, Deterministic) {
  JobSpec job{.n_files = 3, .d_functions = 2, .w_bits = 64, .v_bits = 40, .u_bits = 64,
              .seed = 11};
  EXPECT_EQ(reference_oracle(job), reference_oracle(job));
}

// Flipping one input bit changes roughly half of the output bits.
TEST(Workload, MapAvalanche) {
  JobSpec job{.n_files = 1, .d_functions = 1, .w_bits = 256, .v_bits = 512, .u_bits = 64,
              .seed = 1};
  const BitString file = file_contents(job, 1);
  const BitString base = map_iva(job, 1, 1, file);
  double total = 0;
  for (std::size_t bit = 0; bit < file.size(); ++bit) {
    BitString flipped = file;
    flipped.set(bit, !file.test(bit));
    const BitString diff = base ^ map_iva(job, 1, 1, flipped);
    std::size_t ones = 0;
    for (std::size_t i = 0; i < diff.size(); ++i) ones += diff.test(i);
    EXPECT_GT(ones, 0u);
    total += static_cast<double>(ones) / static_cast<double>(diff.size());
  }
  const double mean = total / static_cast<double>(file.size());
  EXPECT_GT(mean, 0.4);
  EXPECT_LT(mean, 0.6);
}

TEST(Workload, RejectsZeroSizes) {
  EXPECT_THROW(check_job(JobSpec{}), RangeError);
}

}  // namespace
}  // namespace compda
