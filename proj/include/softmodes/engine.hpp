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

// Lloyd-style alternating clustering of categorical data.
//
// run_softmodes alternates two steps until the partition stops changing:
//
//   assign  every point joins its nearest center in Hamming distance, with
//           ties broken uniformly at random;
//   update  for every cluster and attribute, the value frequencies of the
//           cluster members are passed through a rounding function and the
//           new center value is sampled from the rounded distribution.
//
// Plurality rounding gives the classical k-modes algorithm; Soft(t) rounding
// gives SoftModes(t). run_lloyd is the k-means baseline on one-hot data.
//
// All randomness comes from counter-based streams keyed by the config seed,
// the iteration number and the entity (point, or cluster and attribute), so
// results are bit-identical for every thread count.

#ifndef SOFTMODES_ENGINE_HPP_
#define SOFTMODES_ENGINE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "softmodes/dataset.hpp"
#include "softmodes/distance.hpp"
#include "softmodes/rounding.hpp"
#include "softmodes/seeding.hpp"

namespace softmodes {

struct ClusteringConfig {
  std::size_t k = 2;
  RoundingSpec rounding = RoundingSpec::Plurality();
  SeedingMethod seeding = SeedingMethod::kDistanceSampling;
  std::size_t max_iter = 100;
  std::uint64_t seed = 0;
  // Worker count; 0 means all available.
  int threads = 0;

  // Throws ConfigError if k < 1 or max_iter < 1.
  void validate() const;
};

struct IterationRecord {
  std::size_t iteration;  // 1-based
  // k-median objective (Hamming) for SoftModes, sum of squared distances
  // for Lloyd, of the partition produced in this iteration against the
  // centers that produced it.
  double objective;
  // Present only when ground-truth labels are available.
  std::optional<double> accuracy;
};

struct ClusteringResult {
  std::vector<Label> assignment;
  // Centers that produced `assignment`. Filled by run_softmodes.
  std::vector<Center> centers;
  // Real-valued centroids that produced `assignment`. Filled by run_lloyd.
  std::vector<std::vector<double>> centroids;
  std::size_t iterations = 0;
  // True when the last assignment repeated the previous one.
  bool converged = false;
  std::vector<IterationRecord> trace;
};

// Stream key used for assignment tie-breaks and center sampling in a given
// iteration of a run seeded with `seed`.
std::uint64_t tie_break_key(std::uint64_t seed, std::size_t iteration);
std::uint64_t center_sample_key(std::uint64_t seed, std::size_t iteration);

// Nearest-center assignment. Point i breaks ties with Stream(tie_key, i), so
// the output does not depend on `threads`.
std::vector<Label> assign(const CategoricalDataset& ds,
                          std::span<const Center> centers,
                          std::uint64_t tie_key, int threads = 1);

// New center for the rows `members` of cluster `cluster`. Attribute j draws
// from Stream(sample_key, cluster, j). Throws DomainError if members is
// empty.
Center update_center(const CategoricalDataset& ds,
                     std::span<const std::size_t> members,
                     const RoundingSpec& rounding, std::uint64_t sample_key,
                     std::size_t cluster);

// update_center for every cluster at once, counting frequencies in a single
// pass. Entry c is empty when cluster c has no members. Produces the same
// centers as calling update_center per cluster with the same key.
std::vector<std::optional<Center>> update_centers(
    const CategoricalDataset& ds, std::span<const Label> assignment,
    std::size_t k, const RoundingSpec& rounding, std::uint64_t sample_key,
    int threads = 1);

// Sum of Hamming distances from each point to its assigned center.
std::uint64_t objective(const CategoricalDataset& ds,
                        std::span<const Center> centers,
                        std::span<const Label> assignment);

// Runs from centers drawn by config.seeding. Stops when the partition
// repeats or after config.max_iter assignments; the returned partition is
// the last one computed. An empty cluster gets its center reseeded from a
// uniformly random row. Throws ConfigError if k > n.
ClusteringResult run_softmodes(const CategoricalDataset& ds,
                               const ClusteringConfig& config);

// Same, starting from caller-supplied centers (config.k and
// config.seeding are ignored; k = initial.size()).
ClusteringResult run_softmodes(const CategoricalDataset& ds,
                               const ClusteringConfig& config,
                               std::vector<Center> initial);

// Lloyd's algorithm with squared Euclidean distance. Ties go to the lowest
// center index. config.rounding is ignored; config.seeding selects uniform
// rows or k-means++ (D^2) seeding. `labels` enables accuracy in the trace.
ClusteringResult run_lloyd(const OneHotMatrix& x, const ClusteringConfig& config,
                           std::span<const Label> labels = {});

ClusteringResult run_lloyd(const OneHotMatrix& x, const ClusteringConfig& config,
                           std::vector<std::vector<double>> initial,
                           std::span<const Label> labels = {});

}  // namespace softmodes

#endif  // SOFTMODES_ENGINE_HPP_
