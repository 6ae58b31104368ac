/*
 * Copyright 2026 The nftsignal Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Portable counter-based random numbers.
//
// All randomness in nftsignal flows through Philox-4x32-10 (Salmon et al.,
// "Parallel random numbers: as easy as 1, 2, 3", SC'11). The generator is a
// pure function of (key, counter), so streams can be derived from a seed and
// any tuple of indices without shared state, and the output is identical on
// every platform. Distribution transforms below are written out explicitly
// rather than delegated to <random>, whose distributions are
// implementation-defined.
#ifndef NFTSIGNAL_RANDOM_H_
#define NFTSIGNAL_RANDOM_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace nftsignal {

// Philox-4x32 block function with 10 rounds.
//   multipliers: 0xD2511F53, 0xCD9E8D57
//   Weyl key increments: 0x9E3779B9, 0xBB67AE85
std::array<std::uint32_t, 4> Philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// Sequential stream over the Philox block function. The key is the 64-bit
// seed; the upper half of the counter is the 64-bit stream id and the lower
// half counts blocks.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  // Stream id packed from two 32-bit indices, e.g. (feature, repeat).
  static std::uint64_t StreamId(std::uint32_t hi, std::uint32_t lo) {
    return (static_cast<std::uint64_t>(hi) << 32) | lo;
  }

  std::uint32_t NextU32();
  std::uint64_t NextU64();

  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  // Uniform on [lo, hi).
  double Uniform(double lo, double hi);
  // Standard normal via the Box-Muller transform.
  double Normal();
  double Normal(double mean, double sd) { return mean + sd * Normal(); }
  // Uniform integer in [0, bound) by rejection; bound must be > 0.
  std::uint64_t Below(std::uint64_t bound);

  // UniformRandomBitGenerator interface.
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return NextU64(); }

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffered_ = 0;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

// Fisher-Yates shuffle driven by `rng`; result depends only on the rng state.
template <typename T>
void Shuffle(std::span<T> values, CounterRng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.Below(i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace nftsignal

#endif  // NFTSIGNAL_RANDOM_H_
