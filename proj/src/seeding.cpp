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

#include "softmodes/seeding.hpp"

#include <numeric>

#include "parallel.hpp"
#include "softmodes/error.hpp"

namespace softmodes {
namespace {

void check_k(const CategoricalDataset& ds, std::size_t k) {
  if (k < 1 || k > ds.n()) {
    throw ConfigError("k = " + std::to_string(k) + " must lie in [1, n = " +
                      std::to_string(ds.n()) + "]");
  }
}

SeedSet rows_to_centers(const CategoricalDataset& ds,
                        std::vector<std::size_t> indices) {
  SeedSet out;
  out.centers.reserve(indices.size());
  for (std::size_t i : indices) {
    auto r = ds.row(i);
    out.centers.push_back(Center{{r.begin(), r.end()}});
  }
  out.indices = std::move(indices);
  return out;
}

}  // namespace

SeedingMethod parse_seeding(const std::string& name) {
  if (name == "random" || name == "uniform") return SeedingMethod::kUniformRandom;
  if (name == "dsample" || name == "kmeans++") {
    return SeedingMethod::kDistanceSampling;
  }
  throw ConfigError("unknown seeding '" + name + "' (expected random or dsample)");
}

std::string to_string(SeedingMethod method) {
  return method == SeedingMethod::kUniformRandom ? "random" : "dsample";
}

SeedSet seed_uniform(const CategoricalDataset& ds, std::size_t k, Stream& rng) {
  check_k(ds, k);
  std::vector<std::size_t> perm(ds.n());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.next_below(ds.n() - i);
    std::swap(perm[i], perm[j]);
  }
  perm.resize(k);
  return rows_to_centers(ds, std::move(perm));
}

SeedSet seed_distance(const CategoricalDataset& ds, std::size_t k, Stream& rng,
                      int threads) {
  check_k(ds, k);
  const std::size_t n = ds.n();
  const std::size_t d = ds.d();
  const int workers = resolve_threads(threads);

  std::vector<std::size_t> chosen_idx;
  chosen_idx.reserve(k);
  std::vector<char> chosen(n, 0);
  // Distance to the nearest chosen row; chosen rows keep 0.
  std::vector<std::uint64_t> nearest(n, ~std::uint64_t{0});

  auto take = [&](std::size_t idx) {
    chosen[idx] = 1;
    chosen_idx.push_back(idx);
    const Category* c = ds.row(idx).data();
    const Category* base = ds.values().data();
#pragma omp parallel for schedule(static) num_threads(workers)
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t dist = detail::hamming_unchecked(base + i * d, c, d);
      if (dist < nearest[i]) nearest[i] = dist;
    }
  };

  take(rng.next_below(n));
  while (chosen_idx.size() < k) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!chosen[i]) total += nearest[i];
    }
    std::size_t pick = n;
    if (total == 0) {
      std::uint64_t r = rng.next_below(n - chosen_idx.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (chosen[i]) continue;
        if (r == 0) {
          pick = i;
          break;
        }
        --r;
      }
    } else {
      const std::uint64_t target = rng.next_below(total);
      std::uint64_t cumulative = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (chosen[i]) continue;
        cumulative += nearest[i];
        if (target < cumulative) {
          pick = i;
          break;
        }
      }
    }
    take(pick);
  }
  return rows_to_centers(ds, std::move(chosen_idx));
}

SeedSet seed(const CategoricalDataset& ds, std::size_t k, SeedingMethod method,
             Stream& rng, int threads) {
  return method == SeedingMethod::kUniformRandom
             ? seed_uniform(ds, k, rng)
             : seed_distance(ds, k, rng, threads);
}

}  // namespace softmodes
