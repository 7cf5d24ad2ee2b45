// Copyright 2026 The fairdiv Authors
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

#ifndef FAIRDIV_PRNG_HPP_
#define FAIRDIV_PRNG_HPP_

#include <cstdint>
#include <stdexcept>

namespace fairdiv {

// xoshiro256** seeded through splitmix64, the reference construction. Fixed
// here (rather than std::mt19937) so that a (seed, draw sequence) pair pins
// down the same instance in any implementation of the file formats.
class Xoshiro256StarStar {
 public:
  explicit Xoshiro256StarStar(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) {
      sm += 0x9E3779B97F4A7C15ull;
      std::uint64_t z = sm;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
      word = z ^ (z >> 31);
    }
  }

  std::uint64_t next() {
    std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform draw from [lo, hi], both ends included, with rejection sampling
  // so every value is exactly equally likely.
  std::uint64_t uniformInt(std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi) throw std::invalid_argument("empty range for uniformInt");
    std::uint64_t bound = hi - lo + 1;
    if (bound == 0) return next();  // the full 64-bit range
    std::uint64_t lowest = (0 - bound) % bound;
    std::uint64_t draw = next();
    while (draw < lowest) draw = next();
    return lo + draw % bound;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t state_[4];
};

}  // namespace fairdiv

#endif  // FAIRDIV_PRNG_HPP_
