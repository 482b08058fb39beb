// SPDX-License-Identifier: Apache-2.0
//
// Seeded, splittable randomness. Every stochastic routine in the library
// takes a (seed, path) pair and derives an independent PCG32 stream from
// it, so results do not depend on scheduling or thread count.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace gatebound {
namespace rng {

// PCG32 (O'Neill). 64-bit state, 64-bit stream selector, 32-bit output.
class Pcg32 {
 public:
  Pcg32() : Pcg32(0x853c49e6748fea9bULL, 0xda3e39cb94b95bdbULL) {}
  Pcg32(std::uint64_t initstate, std::uint64_t initseq) {
    state_ = 0u;
    inc_ = (initseq << 1u) | 1u;
    next_u32();
    state_ += initstate;
    next_u32();
  }

  std::uint32_t next_u32() {
    const std::uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    const std::uint32_t xorshifted =
        static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    const std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
  }

  std::uint64_t next_u64() {
    return (static_cast<std::uint64_t>(next_u32()) << 32) | next_u32();
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() {
    const std::uint64_t a = next_u32() >> 5;  // 27 bits
    const std::uint64_t b = next_u32() >> 6;  // 26 bits
    return static_cast<double>((a << 26) | b) * (1.0 / 9007199254740992.0);
  }

  // Uniform integer in [0, bound) by rejection (unbiased).
  std::uint32_t uniform_below(std::uint32_t bound);

  double normal();  // standard normal, Box-Muller (two uniforms per call)

  // Poisson sampling: CDF inversion for mean < 30, Hormann's PTRS
  // transformed rejection above.
  std::int64_t poisson(double mean);

  std::int64_t binomial(std::int64_t n, double p);

 private:
  std::uint64_t state_;
  std::uint64_t inc_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Derive the stream for a (seed, path) pair, e.g. {basis, input, outcome}.
Pcg32 derive_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path);
Pcg32 derive_stream(std::uint64_t seed, const std::vector<std::uint64_t>& path);

// Walker/Vose alias table for O(1) draws from a fixed discrete distribution.
class AliasTable {
 public:
  explicit AliasTable(const std::vector<double>& weights);
  std::size_t sample(Pcg32& gen) const;
  std::size_t size() const { return prob_.size(); }

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

} // namespace rng
} // namespace gatebound
