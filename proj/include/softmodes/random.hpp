// Copyright 2026 The SoftModes Authors.
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

// Counter-based random streams.
//
// Every random decision made by the library is drawn from a Philox4x32-10
// block cipher evaluated at a (key, counter) pair. Keys are derived from the
// user's root seed plus a purpose tag and an index such as the iteration
// number; the counter names the entity (point, cluster, attribute) that owns
// the stream. Because no generator state is shared between entities, the
// values drawn for an entity do not depend on how work is split across
// threads.

#ifndef SOFTMODES_RANDOM_HPP_
#define SOFTMODES_RANDOM_HPP_

#include <array>
#include <cstdint>
#include <initializer_list>

namespace softmodes {

using Philox4x32Block = std::array<std::uint32_t, 4>;
using Philox4x32Key = std::array<std::uint32_t, 2>;

// One application of Philox4x32 with 10 rounds.
Philox4x32Block philox4x32_10(Philox4x32Block counter, Philox4x32Key key);

// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Hashes a root seed together with a tuple of integers into a new 64-bit
// seed. Order of `parts` matters.
std::uint64_t derive_seed(std::uint64_t root,
                          std::initializer_list<std::uint64_t> parts);

// Purpose tags that keep streams for different decisions disjoint.
enum class StreamPurpose : std::uint64_t {
  kSeeding = 1,
  kAssignTies = 2,
  kCenterSample = 3,
  kReseed = 4,
  kGenerateRows = 5,
  kGenerateCenters = 6,
  kShuffle = 7,
  kNoiseLabels = 8,
  kEpoch = 9,
};

// Sequential stream over the Philox counter space. The stream is identified
// by a 64-bit key and a (major, minor) index; successive draws advance a
// private block counter. Copying a Stream forks it.
class Stream {
 public:
  Stream(std::uint64_t key, std::uint64_t major, std::uint32_t minor = 0);

  // Convenience: key = derive_seed(root, {purpose, scope}).
  static Stream For(std::uint64_t root, StreamPurpose purpose,
                    std::uint64_t scope, std::uint64_t major,
                    std::uint32_t minor = 0);

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  // Uniform double in [0, 1) with 53 random bits.
  double next_double();

  // Uniform integer in [0, bound). bound must be positive. Uses Lemire's
  // multiply-and-reject method, so the result is exactly uniform.
  std::uint64_t next_below(std::uint64_t bound);

  // UniformRandomBitGenerator interface.
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return next_u64(); }

 private:
  void refill();

  Philox4x32Key key_;
  std::uint32_t major_lo_;
  std::uint32_t major_hi_;
  std::uint32_t minor_;
  std::uint32_t block_ = 0;
  Philox4x32Block buffer_{};
  int available_ = 0;
};

}  // namespace softmodes

#endif  // SOFTMODES_RANDOM_HPP_
