// Copyright 2026 The Authors.
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

// Counter-keyed random streams. Every (seed, stream, substream) triple names
// an independent sequence, so simulations can hand each (run, time step) its
// own stream and stay reproducible regardless of execution order.

#ifndef EPISFM_RANDOM_H_
#define EPISFM_RANDOM_H_

#include <cstdint>
#include <limits>

namespace episfm {

// SplitMix64 finalizer.
constexpr std::uint64_t MixBits(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t HashSeed(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b = 0) {
  std::uint64_t h = MixBits(seed + 0x9e3779b97f4a7c15ULL);
  h = MixBits(h ^ (a + 0x632be59bd9b4e019ULL));
  h = MixBits(h ^ (b + 0x85157af5ULL));
  return h;
}

// SplitMix64 generator. Satisfies UniformRandomBitGenerator so it can also be
// fed to <random> distributions, although the simulator only uses Uniform01
// to keep draws bit-identical across standard library implementations.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed) : state_(seed) {}
  RandomStream(std::uint64_t seed, std::uint64_t stream,
               std::uint64_t substream = 0)
      : state_(HashSeed(seed, stream, substream)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return MixBits(state_);
  }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform integer on [0, bound). bound must be positive.
  std::uint64_t UniformIndex(std::uint64_t bound) {
    auto k = static_cast<std::uint64_t>(Uniform01() * static_cast<double>(bound));
    return k < bound ? k : bound - 1;
  }

 private:
  std::uint64_t state_;
};

}  // namespace episfm

#endif  // EPISFM_RANDOM_H_
