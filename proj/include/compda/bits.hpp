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
#include <span>
#include <vector>

#include "compda/errors.hpp"

namespace compda {

// Fixed-length bit string. Bit i lives in byte i/8 at position i%8 (LSB
// first). Bits past size() are kept zero so equality is word equality.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t nbits) : words_((nbits + 63) / 64, 0), size_(nbits) {}

  static BitString from_bytes(std::span<const std::uint8_t> bytes, std::size_t nbits) {
    if (bytes.size() * 8 < nbits) throw RangeError("BitString: not enough bytes");
    BitString b(nbits);
    for (std::size_t i = 0; i < (nbits + 7) / 8; ++i)
      b.words_[i / 8] |= static_cast<std::uint64_t>(bytes[i]) << (8 * (i % 8));
    b.clear_tail();
    return b;
  }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (value)
      words_[i / 64] |= mask;
    else
      words_[i / 64] &= ~mask;
  }

  void append(const BitString& other) {
    const std::size_t old = size_;
    resize(size_ + other.size_);
    for (std::size_t i = 0; i < other.size_; ++i)
      if (other.test(i)) set(old + i, true);
  }

  BitString slice(std::size_t offset, std::size_t len) const {
    if (offset + len > size_) throw RangeError("BitString::slice out of range");
    BitString out(len);
    for (std::size_t i = 0; i < len; ++i)
      if (test(offset + i)) out.set(i, true);
    return out;
  }

  BitString& operator^=(const BitString& other) {
    if (other.size_ != size_) throw RangeError("BitString: XOR of unequal lengths");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }

  std::vector<std::uint8_t> to_bytes() const {
    std::vector<std::uint8_t> out((size_ + 7) / 8);
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = static_cast<std::uint8_t>(words_[i / 8] >> (8 * (i % 8)));
    return out;
  }

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  void resize(std::size_t nbits) {
    words_.resize((nbits + 63) / 64, 0);
    size_ = nbits;
  }
  void clear_tail() {
    if (size_ % 64) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }

  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

inline BitString operator^(BitString a, const BitString& b) { return a ^= b; }

}  // namespace compda
