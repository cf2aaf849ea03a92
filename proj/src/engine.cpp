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

#include "softmodes/engine.hpp"

#include <limits>
#include <string>

#include "parallel.hpp"
#include "softmodes/error.hpp"
#include "softmodes/evaluation.hpp"

namespace softmodes {
namespace {

// Offsets of each attribute's value block in a flattened count table.
std::vector<std::size_t> value_offsets(const CategoricalDataset& ds) {
  std::vector<std::size_t> off(ds.d() + 1, 0);
  for (std::size_t j = 0; j < ds.d(); ++j) off[j + 1] = off[j] + ds.arity(j);
  return off;
}

Category draw_value(std::span<const std::size_t> counts,
                    const RoundingSpec& rounding, std::uint64_t sample_key,
                    std::size_t cluster, std::size_t attribute) {
  const SimplexPoint freq = SimplexPoint::FromCounts(counts);
  const SimplexPoint rounded = round(freq, rounding);
  Stream rng(sample_key, cluster, static_cast<std::uint32_t>(attribute));
  return static_cast<Category>(sample_category(rounded, rng));
}

// Assignment that also reports the summed distance to the chosen centers.
std::uint64_t assign_into(const CategoricalDataset& ds,
                          std::span<const Center> centers,
                          std::uint64_t tie_key, int threads,
                          std::vector<Label>& out) {
  const std::size_t n = ds.n();
  const std::size_t d = ds.d();
  const std::size_t k = centers.size();
  out.resize(n);
  const Category* base = ds.values().data();
  std::uint64_t total = 0;
  const int workers = resolve_threads(threads);
#pragma omp parallel num_threads(workers) reduction(+ : total)
  {
    std::vector<std::size_t> dist(k);
#pragma omp for schedule(static)
    for (std::size_t i = 0; i < n; ++i) {
      const Category* p = base + i * d;
      std::size_t best = std::numeric_limits<std::size_t>::max();
      std::size_t ties = 0;
      for (std::size_t c = 0; c < k; ++c) {
        const std::size_t dc =
            detail::hamming_unchecked(p, centers[c].values.data(), d);
        dist[c] = dc;
        if (dc < best) {
          best = dc;
          ties = 1;
        } else if (dc == best) {
          ++ties;
        }
      }
      std::size_t pick = 0;
      if (ties == 1) {
        while (dist[pick] != best) ++pick;
      } else {
        Stream rng(tie_key, i);
        std::uint64_t r = rng.next_below(ties);
        for (;; ++pick) {
          if (dist[pick] == best && r-- == 0) break;
        }
      }
      out[i] = static_cast<Label>(pick);
      total += best;
    }
  }
  return total;
}

void check_centers(const CategoricalDataset& ds, std::span<const Center> centers) {
  if (centers.empty()) throw ConfigError("at least one center is required");
  for (const Center& c : centers) validate_center(ds, c);
}

}  // namespace

void ClusteringConfig::validate() const {
  if (k < 1) throw ConfigError("k must be at least 1");
  if (max_iter < 1) throw ConfigError("max_iter must be at least 1");
}

std::uint64_t tie_break_key(std::uint64_t seed, std::size_t iteration) {
  return derive_seed(seed, {static_cast<std::uint64_t>(StreamPurpose::kAssignTies),
                            iteration});
}

std::uint64_t center_sample_key(std::uint64_t seed, std::size_t iteration) {
  return derive_seed(seed, {static_cast<std::uint64_t>(StreamPurpose::kCenterSample),
                            iteration});
}

std::vector<Label> assign(const CategoricalDataset& ds,
                          std::span<const Center> centers,
                          std::uint64_t tie_key, int threads) {
  check_centers(ds, centers);
  std::vector<Label> out;
  assign_into(ds, centers, tie_key, threads, out);
  return out;
}

Center update_center(const CategoricalDataset& ds,
                     std::span<const std::size_t> members,
                     const RoundingSpec& rounding, std::uint64_t sample_key,
                     std::size_t cluster) {
  if (members.empty()) throw DomainError("cannot update the center of an empty cluster");
  Center center{std::vector<Category>(ds.d())};
  std::vector<std::size_t> counts;
  for (std::size_t j = 0; j < ds.d(); ++j) {
    counts.assign(ds.arity(j), 0);
    for (std::size_t i : members) ++counts[ds.at(i, j)];
    center.values[j] = draw_value(counts, rounding, sample_key, cluster, j);
  }
  return center;
}

std::vector<std::optional<Center>> update_centers(
    const CategoricalDataset& ds, std::span<const Label> assignment,
    std::size_t k, const RoundingSpec& rounding, std::uint64_t sample_key,
    int threads) {
  if (assignment.size() != ds.n()) {
    throw DomainError("assignment length does not match the dataset");
  }
  const std::size_t n = ds.n();
  const std::size_t d = ds.d();
  const std::vector<std::size_t> off = value_offsets(ds);
  const std::size_t width = off.back();
  const int workers = resolve_threads(threads);

  // counts[c * width + off[j] + v] = #members of c with value v at j.
  std::vector<std::size_t> counts(k * width, 0);
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const Label c = assignment[i];
    if (c >= k) throw DomainError("assignment refers to cluster " + std::to_string(c));
    ++sizes[c];
  }
  const Category* base = ds.values().data();
#pragma omp parallel num_threads(workers)
  {
    std::vector<std::size_t> local(k * width, 0);
#pragma omp for schedule(static) nowait
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t* row = local.data() + assignment[i] * width;
      const Category* p = base + i * d;
      for (std::size_t j = 0; j < d; ++j) ++row[off[j] + p[j]];
    }
    // Integer sums commute, so the merge order is irrelevant.
#pragma omp critical
    for (std::size_t t = 0; t < local.size(); ++t) counts[t] += local[t];
  }

  std::vector<std::optional<Center>> out(k);
  for (std::size_t c = 0; c < k; ++c) {
    if (sizes[c] > 0) out[c] = Center{std::vector<Category>(d)};
  }
  const std::size_t cells = k * d;
#pragma omp parallel for schedule(static) num_threads(workers)
  for (std::size_t cell = 0; cell < cells; ++cell) {
    const std::size_t c = cell / d;
    const std::size_t j = cell % d;
    if (sizes[c] == 0) continue;
    const std::span<const std::size_t> block(counts.data() + c * width + off[j],
                                             ds.arity(j));
    out[c]->values[j] = draw_value(block, rounding, sample_key, c, j);
  }
  return out;
}

std::uint64_t objective(const CategoricalDataset& ds,
                        std::span<const Center> centers,
                        std::span<const Label> assignment) {
  if (assignment.size() != ds.n()) {
    throw DomainError("assignment length does not match the dataset");
  }
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < ds.n(); ++i) {
    if (assignment[i] >= centers.size()) {
      throw DomainError("assignment refers to a missing center");
    }
    total += hamming(ds.row(i), centers[assignment[i]].values);
  }
  return total;
}

ClusteringResult run_softmodes(const CategoricalDataset& ds,
                               const ClusteringConfig& config) {
  config.validate();
  if (config.k > ds.n()) {
    throw ConfigError("k = " + std::to_string(config.k) + " exceeds n = " +
                      std::to_string(ds.n()));
  }
  Stream rng = Stream::For(config.seed, StreamPurpose::kSeeding, 0, 0);
  SeedSet seeds = seed(ds, config.k, config.seeding, rng, config.threads);
  return run_softmodes(ds, config, std::move(seeds.centers));
}

ClusteringResult run_softmodes(const CategoricalDataset& ds,
                               const ClusteringConfig& config,
                               std::vector<Center> initial) {
  config.validate();
  check_centers(ds, initial);
  const std::size_t k = initial.size();
  if (k > ds.n()) {
    throw ConfigError("k = " + std::to_string(k) + " exceeds n = " +
                      std::to_string(ds.n()));
  }

  ClusteringResult result;
  std::vector<Center> centers = std::move(initial);
  std::vector<Label> current;
  std::vector<Label> previous;
  for (std::size_t r = 1; r <= config.max_iter; ++r) {
    const std::uint64_t cost = assign_into(ds, centers, tie_break_key(config.seed, r),
                                           config.threads, current);
    IterationRecord rec{r, static_cast<double>(cost), std::nullopt};
    if (ds.has_labels()) rec.accuracy = accuracy(current, ds.labels());
    result.trace.push_back(rec);
    result.iterations = r;
    if (r > 1 && current == previous) {
      result.converged = true;
      break;
    }
    if (r == config.max_iter) break;

    std::vector<std::optional<Center>> next =
        update_centers(ds, current, k, config.rounding,
                       center_sample_key(config.seed, r), config.threads);
    for (std::size_t c = 0; c < k; ++c) {
      if (next[c]) {
        centers[c] = std::move(*next[c]);
      } else {
        Stream reseed = Stream::For(config.seed, StreamPurpose::kReseed, r, c);
        auto row = ds.row(reseed.next_below(ds.n()));
        centers[c] = Center{{row.begin(), row.end()}};
      }
    }
    std::swap(previous, current);
  }
  result.assignment = std::move(current);
  result.centers = std::move(centers);
  return result;
}

}  // namespace softmodes
