// Copyright 2026 The Prunekit Authors
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

#ifndef PRUNEKIT_RANDOM_HPP_
#define PRUNEKIT_RANDOM_HPP_

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace prunekit {

/// Philox4x32-10 counter-based generator.
///
/// A generator is identified by a 64-bit key (the seed) and a 64-bit stream
/// id. Streams with the same key are statistically independent and never
/// share state, so a consumer can give every logical unit (a class, a layer,
/// an epoch) its own stream and adding units never perturbs earlier ones.
/// All derived distributions are implemented here, not via <random>, so the
/// produced values are identical across standard libraries.
class Philox {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  Philox(std::uint64_t seed, std::uint64_t stream);

  // Raw 10-round bijection, exposed for known-answer testing.
  static Block Encrypt(Block counter, Key key);

  std::uint32_t NextU32();
  std::uint64_t NextU64();

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform();
  // Uniform double in [lo, hi).
  double Uniform(double lo, double hi);
  // Standard normal via Box-Muller.
  double Normal();
  // Unbiased integer in [0, n). n must be positive.
  std::uint64_t Below(std::uint64_t n);

 private:
  void Refill();

  Key key_;
  std::uint64_t block_index_ = 0;
  std::uint64_t stream_;
  Block buffer_{};
  int buffered_ = 0;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

// SplitMix64 finalizer. Used to derive independent seeds for pipeline
// stages from one user-visible seed.
std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t salt);

// Derives a stage seed from a textual tag (FNV-1a of the tag as salt).
std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view tag);

// Uniformly random permutation of {0, ..., n-1} (Fisher-Yates).
std::vector<std::uint64_t> RandomPermutation(std::uint64_t n, Philox& rng);

}  // namespace prunekit

#endif  // PRUNEKIT_RANDOM_HPP_
