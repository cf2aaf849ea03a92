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

#include "softmodes/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "parallel.hpp"
#include "softmodes/error.hpp"
#include "softmodes/random.hpp"

namespace softmodes {
namespace {

// Fisher-Yates permutation of [0, n).
std::vector<std::size_t> shuffled_order(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Stream rng = Stream::For(seed, StreamPurpose::kShuffle, 0, 0);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[rng.next_below(i)]);
  }
  return order;
}

DatasetNames binary_names(std::size_t d) {
  DatasetNames names;
  names.columns.reserve(d);
  for (std::size_t j = 0; j < d; ++j) names.columns.push_back("x" + std::to_string(j));
  names.label_column = "label";
  return names;
}

// Applies the row permutation and packages the dataset.
CategoricalDataset finish(std::size_t n, std::size_t d,
                          const std::vector<Category>& rows,
                          const std::vector<Label>& labels,
                          std::uint64_t seed) {
  const std::vector<std::size_t> order = shuffled_order(n, seed);
  std::vector<Category> values(n * d);
  std::vector<Label> out_labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t src = order[i];
    std::copy_n(rows.begin() + static_cast<std::ptrdiff_t>(src * d), d,
                values.begin() + static_cast<std::ptrdiff_t>(i * d));
    out_labels[i] = labels[src];
  }
  return CategoricalDataset(n, std::vector<AttributeDomain>(d, AttributeDomain{2}),
                            std::move(values), std::move(out_labels),
                            binary_names(d));
}

}  // namespace

std::vector<std::size_t> even_split(std::size_t total, std::size_t parts) {
  if (parts == 0) throw ConfigError("cannot split into zero parts");
  std::vector<std::size_t> sizes(parts, total / parts);
  for (std::size_t i = 0; i < total % parts; ++i) ++sizes[i];
  return sizes;
}

std::size_t BbmSpec::n() const {
  return std::accumulate(cluster_sizes.begin(), cluster_sizes.end(), std::size_t{0});
}

std::size_t BbmSpec::d() const {
  return std::accumulate(feature_block_sizes.begin(), feature_block_sizes.end(),
                         std::size_t{0});
}

void BbmSpec::validate() const {
  const std::size_t kk = k();
  if (kk == 0) throw ConfigError("BBM needs at least one cluster");
  if (feature_block_sizes.size() != kk) {
    throw ConfigError("BBM needs one feature block per cluster");
  }
  for (std::size_t s : cluster_sizes) {
    if (s == 0) throw ConfigError("BBM cluster sizes must be positive");
  }
  for (std::size_t s : feature_block_sizes) {
    if (s == 0) throw ConfigError("BBM feature block sizes must be positive");
  }
  if (p.size() != kk) throw ConfigError("BBM probability matrix must be k x k");
  for (const auto& row : p) {
    if (row.size() != kk) throw ConfigError("BBM probability matrix must be k x k");
    for (double v : row) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw ConfigError("BBM probabilities must lie in [0, 1]");
      }
    }
  }
}

BbmSpec BbmSpec::Symmetric(std::size_t n, std::size_t d, std::size_t k,
                           double p, double q, std::uint64_t seed) {
  if (k == 0 || n < k || d < k) {
    throw ConfigError("BBM needs 1 <= k <= min(n, d)");
  }
  BbmSpec spec;
  spec.cluster_sizes = even_split(n, k);
  spec.feature_block_sizes = even_split(d, k);
  spec.p.assign(k, std::vector<double>(k, q));
  for (std::size_t i = 0; i < k; ++i) spec.p[i][i] = p;
  spec.seed = seed;
  spec.validate();
  return spec;
}

CategoricalDataset generate_bbm(const BbmSpec& spec, int threads) {
  spec.validate();
  const std::size_t n = spec.n();
  const std::size_t d = spec.d();
  const std::size_t k = spec.k();

  std::vector<Label> labels(n);
  for (std::size_t c = 0, a = 0; c < k; ++c) {
    for (std::size_t s = 0; s < spec.cluster_sizes[c]; ++s) labels[a++] = static_cast<Label>(c);
  }
  std::vector<std::size_t> block_of(d);
  for (std::size_t b = 0, j = 0; b < k; ++b) {
    for (std::size_t s = 0; s < spec.feature_block_sizes[b]; ++s) block_of[j++] = b;
  }

  std::vector<Category> rows(n * d);
  const int workers = resolve_threads(threads);
#pragma omp parallel for schedule(static) num_threads(workers)
  for (std::size_t a = 0; a < n; ++a) {
    Stream rng = Stream::For(spec.seed, StreamPurpose::kGenerateRows, 0, a);
    const std::vector<double>& probs = spec.p[labels[a]];
    Category* out = rows.data() + a * d;
    for (std::size_t j = 0; j < d; ++j) {
      out[j] = rng.next_double() < probs[block_of[j]] ? 1 : 0;
    }
  }
  return finish(n, d, rows, labels, spec.seed);
}

void CcmSpec::validate() const {
  if (n == 0 || d == 0) throw ConfigError("CCM needs n >= 1 and d >= 1");
  if (k == 0) throw ConfigError("CCM needs k >= 1");
  if (!(epsilon >= 0.0 && epsilon < 0.5)) {
    throw ConfigError("CCM flip probability must lie in [0, 0.5)");
  }
  if (!(rho >= 0.0 && rho <= 1.0)) throw ConfigError("CCM noise fraction must lie in [0, 1]");
}

std::size_t CcmSpec::clean_count() const {
  // The slack absorbs representation error in products such as 0.9 * 10000.
  const double clean = std::floor((1.0 - rho) * static_cast<double>(n) + 1e-9);
  return std::min(n, static_cast<std::size_t>(std::max(0.0, clean)));
}

std::vector<std::vector<Category>> ccm_centers(const CcmSpec& spec) {
  spec.validate();
  std::vector<std::vector<Category>> centers(spec.k, std::vector<Category>(spec.d));
  for (std::size_t c = 0; c < spec.k; ++c) {
    Stream rng = Stream::For(spec.seed, StreamPurpose::kGenerateCenters, 0, c);
    for (std::size_t j = 0; j < spec.d; ++j) centers[c][j] = rng.next_u32() >> 31;
  }
  return centers;
}

CategoricalDataset generate_ccm(const CcmSpec& spec, int threads) {
  const std::vector<std::vector<Category>> centers = ccm_centers(spec);
  const std::size_t n = spec.n;
  const std::size_t d = spec.d;
  const std::size_t clean = spec.clean_count();

  std::vector<Label> labels(n);
  const std::vector<std::size_t> sizes = even_split(clean, spec.k);
  for (std::size_t c = 0, a = 0; c < spec.k; ++c) {
    for (std::size_t s = 0; s < sizes[c]; ++s) labels[a++] = static_cast<Label>(c);
  }

  std::vector<Category> rows(n * d);
  const int workers = resolve_threads(threads);
#pragma omp parallel for schedule(static) num_threads(workers)
  for (std::size_t a = 0; a < n; ++a) {
    Stream rng = Stream::For(spec.seed, StreamPurpose::kGenerateRows, 0, a);
    Category* out = rows.data() + a * d;
    if (a < clean) {
      const std::vector<Category>& center = centers[labels[a]];
      for (std::size_t j = 0; j < d; ++j) {
        out[j] = center[j] ^ (rng.next_double() < spec.epsilon ? 1u : 0u);
      }
    } else {
      for (std::size_t j = 0; j < d; ++j) out[j] = rng.next_u32() >> 31;
      labels[a] = static_cast<Label>(rng.next_below(spec.k));
    }
  }
  return finish(n, d, rows, labels, spec.seed);
}

double max_noise_accuracy(double rho, std::size_t k) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("rho must lie in [0, 1]");
  if (k == 0) throw DomainError("k must be at least 1");
  return rho / static_cast<double>(k) + 1.0 - rho;
}

}  // namespace softmodes
