// Copyright 2026 The irscov Authors.
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

#include <cstdint>

namespace irscov {

/// Counter-based 64-bit generator (SplitMix64 finalizer over a Weyl
/// sequence). Output is a pure function of (seed, counter), so any worker
/// can jump to an arbitrary position in the stream: simulations stay
/// bit-reproducible no matter how trials are partitioned across threads.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0)
      : base_(mix(seed ^ 0x8BB84B93962EEFCDULL)), counter_(counter) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ULL; }

  result_type operator()() {
    return mix(base_ + 0x9E3779B97F4A7C15ULL * ++counter_);
  }

  void seek(std::uint64_t counter) { counter_ = counter; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t base_;
  std::uint64_t counter_;
};

/// Uniform draw on (0, 1]; the closed upper end keeps log(u) finite.
template <class Urbg>
double uniform_unit(Urbg& gen) {
  static_assert(sizeof(typename Urbg::result_type) == 8,
                "uniform_unit needs a 64-bit generator");
  return static_cast<double>((gen() >> 11) + 1) * 0x1.0p-53;
}

}  // namespace irscov
