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

// Synthetic labeled binary datasets.
//
// Boolean Block Model: points are partitioned into clusters C_1..C_k and
// features into blocks D_1..D_k; a point of C_i has each feature of D_j set
// to 1 independently with probability P(i, j).
//
// Corrupted Codewords Model: k centers drawn uniformly from {0,1}^d; each
// clean point copies its center and flips every bit with probability eps.
// A fraction rho of the points is replaced by uniform noise with uniformly
// random labels.
//
// Rows are generated from per-row counter streams and shuffled at the end,
// so the output is identical for every thread count.

#ifndef SOFTMODES_GENERATORS_HPP_
#define SOFTMODES_GENERATORS_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "softmodes/dataset.hpp"

namespace softmodes {

struct BbmSpec {
  std::vector<std::size_t> cluster_sizes;        // sums to n
  std::vector<std::size_t> feature_block_sizes;  // sums to d
  std::vector<std::vector<double>> p;            // k x k, entries in [0, 1]
  std::uint64_t seed = 0;

  std::size_t n() const;
  std::size_t d() const;
  std::size_t k() const { return cluster_sizes.size(); }

  // Throws ConfigError on inconsistent sizes or probabilities.
  void validate() const;

  // Near-equal clusters and feature blocks, p on the diagonal and q
  // elsewhere.
  static BbmSpec Symmetric(std::size_t n, std::size_t d, std::size_t k,
                           double p, double q, std::uint64_t seed);
};

struct CcmSpec {
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t k = 1;
  double epsilon = 0.0;  // bit flip probability, in [0, 0.5)
  double rho = 0.0;      // noise fraction, in [0, 1]
  std::uint64_t seed = 0;

  void validate() const;
  // floor((1 - rho) n), the number of clean points.
  std::size_t clean_count() const;
};

// `parts` near-equal sizes summing to `total`; the first total % parts
// entries get one extra.
std::vector<std::size_t> even_split(std::size_t total, std::size_t parts);

CategoricalDataset generate_bbm(const BbmSpec& spec, int threads = 1);

CategoricalDataset generate_ccm(const CcmSpec& spec, int threads = 1);

// Centers used by generate_ccm for this spec, before corruption.
std::vector<std::vector<Category>> ccm_centers(const CcmSpec& spec);

// Best accuracy any clustering can reach when a fraction rho of the points
// carries uniformly random labels: rho / k + 1 - rho.
double max_noise_accuracy(double rho, std::size_t k);

}  // namespace softmodes

#endif  // SOFTMODES_GENERATORS_HPP_
