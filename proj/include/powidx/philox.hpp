// Copyright 2026 The powidx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POWIDX_PHILOX_HPP
#define POWIDX_PHILOX_HPP

#include <array>
#include <cstdint>

namespace powidx {

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
//
// Seed-to-stream derivation contract: a 64-bit user seed becomes the Philox
// key; a 64-bit stream id (see derive_stream) becomes the upper counter
// half. Streams never overlap and any (seed, stream) pair replays the same
// sequence, which is what makes block-parallel sampling reproducible.
namespace philox {

inline constexpr std::uint32_t kW32A = 0x9E3779B9u;
inline constexpr std::uint32_t kW32B = 0xBB67AE85u;
inline constexpr std::uint32_t kM4x32A = 0xD2511F53u;
inline constexpr std::uint32_t kM4x32B = 0xCD9E8D57u;

inline void mul_hilo(std::uint32_t a, std::uint32_t b, std::uint32_t* lo, std::uint32_t* hi) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  *lo = static_cast<std::uint32_t>(p);
  *hi = static_cast<std::uint32_t>(p >> 32);
}

inline std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                          std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t lo0, hi0, lo1, hi1;
    mul_hilo(kM4x32A, ctr[0], &lo0, &hi0);
    mul_hilo(kM4x32B, ctr[2], &lo1, &hi1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kW32A;
    key[1] += kW32B;
  }
  return ctr;
}

}  // namespace philox

// splitmix64; used to hash (seed, indices...) into substream ids.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_stream(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a) ^ (0x9E3779B97F4A7C15ull + b));
}

inline std::uint64_t derive_stream(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return derive_stream(derive_stream(a, b), c);
}

class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        ctr_{0, 0, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)} {}

  std::uint32_t next_u32() {
    if (have_ == 0) {
      buf_ = philox::block(ctr_, key_);
      if (++ctr_[0] == 0) ++ctr_[1];
      have_ = 4;
    }
    return buf_[4 - have_--];
  }

  std::uint64_t next_u64() {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  // Uniform double in [0,1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Unbiased uniform integer in [0, n) by rejection.
  std::uint32_t next_below(std::uint32_t n) {
    const std::uint32_t lim = 0xFFFFFFFFu - 0xFFFFFFFFu % n;
    for (;;) {
      const std::uint32_t v = next_u32();
      if (v < lim) return v % n;
    }
  }

 private:
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> ctr_;
  std::array<std::uint32_t, 4> buf_{};
  int have_ = 0;
};

}  // namespace powidx

#endif  // POWIDX_PHILOX_HPP
