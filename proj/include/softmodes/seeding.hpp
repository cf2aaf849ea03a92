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

#ifndef SOFTMODES_SEEDING_HPP_
#define SOFTMODES_SEEDING_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "softmodes/dataset.hpp"
#include "softmodes/distance.hpp"
#include "softmodes/random.hpp"

namespace softmodes {

enum class SeedingMethod {
  kUniformRandom,     // "random"
  kDistanceSampling,  // "dsample"
};

SeedingMethod parse_seeding(const std::string& name);
std::string to_string(SeedingMethod method);

// Initial centers together with the dataset rows they were copied from.
struct SeedSet {
  std::vector<std::size_t> indices;
  std::vector<Center> centers;
};

// k distinct rows chosen uniformly without replacement.
// Throws ConfigError unless 1 <= k <= n.
SeedSet seed_uniform(const CategoricalDataset& ds, std::size_t k, Stream& rng);

// D^1 sampling in the Hamming metric: the first row is uniform, every later
// row is drawn with probability proportional to its distance from the
// nearest row already chosen. When every remaining row sits at distance 0
// the draw falls back to uniform over the unchosen rows. Distance updates
// may use `threads` workers; the draws do not depend on it.
// Throws ConfigError unless 1 <= k <= n.
SeedSet seed_distance(const CategoricalDataset& ds, std::size_t k, Stream& rng,
                      int threads = 1);

SeedSet seed(const CategoricalDataset& ds, std::size_t k, SeedingMethod method,
             Stream& rng, int threads = 1);

}  // namespace softmodes

#endif  // SOFTMODES_SEEDING_HPP_
