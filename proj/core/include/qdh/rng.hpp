// Copyright 2026 The qdh Authors
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

#ifndef QDH_RNG_HPP
#define QDH_RNG_HPP

#include <cstdint>

namespace qdh {

/// SplitMix64: a counter-based 64-bit generator (fixed-increment state,
/// output finalized by a mixing function). Streams derived from distinct
/// (seed, index) pairs are statistically independent, which makes
/// per-trial streams replay-identical regardless of execution order.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Bernoulli(p) draw.
  bool next_bool(double p) { return next_double() < p; }

 private:
  std::uint64_t state_;
};

/// Stream for one trial of a seeded experiment: mixes the master seed with
/// the trial index so trials can run in any order (or in parallel) with
/// bit-identical results.
inline SplitMix64 trial_stream(std::uint64_t master_seed,
                               std::uint64_t trial_index) {
  SplitMix64 mixer(master_seed ^
                   (0xD1342543DE82EF95ULL * (trial_index + 1)));
  return SplitMix64(mixer.next_u64());
}

}  // namespace qdh

#endif  // QDH_RNG_HPP
