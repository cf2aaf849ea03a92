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

#include <limits>
#include <numeric>
#include <string>

#include "parallel.hpp"
#include "softmodes/engine.hpp"
#include "softmodes/error.hpp"
#include "softmodes/evaluation.hpp"

namespace softmodes {
namespace {

using Centroid = std::vector<double>;

double squared_distance(const double* a, const double* b, std::size_t dim) {
  double s = 0.0;
  for (std::size_t t = 0; t < dim; ++t) {
    const double diff = a[t] - b[t];
    s += diff * diff;
  }
  return s;
}

Centroid copy_row(const OneHotMatrix& x, std::size_t i) {
  auto r = x.row(i);
  return Centroid(r.begin(), r.end());
}

std::vector<Centroid> seed_rows_uniform(const OneHotMatrix& x, std::size_t k,
                                        Stream& rng) {
  std::vector<std::size_t> perm(x.n());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<Centroid> out;
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(perm[i], perm[i + rng.next_below(x.n() - i)]);
    out.push_back(copy_row(x, perm[i]));
  }
  return out;
}

// k-means++: D^2 sampling on squared Euclidean distance.
std::vector<Centroid> seed_rows_kmeanspp(const OneHotMatrix& x, std::size_t k,
                                         Stream& rng, int workers) {
  const std::size_t n = x.n();
  const std::size_t dim = x.cols();
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  std::vector<char> chosen(n, 0);
  std::vector<Centroid> out;
  auto take = [&](std::size_t idx) {
    chosen[idx] = 1;
    out.push_back(copy_row(x, idx));
    const double* c = out.back().data();
#pragma omp parallel for schedule(static) num_threads(workers)
    for (std::size_t i = 0; i < n; ++i) {
      const double dist = squared_distance(x.row(i).data(), c, dim);
      if (dist < nearest[i]) nearest[i] = dist;
    }
  };
  take(rng.next_below(n));
  while (out.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!chosen[i]) total += nearest[i];
    }
    std::size_t pick = n;
    if (total > 0.0) {
      const double target = rng.next_double() * total;
      double cumulative = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (chosen[i] || nearest[i] <= 0.0) continue;
        cumulative += nearest[i];
        pick = i;
        if (target < cumulative) break;
      }
    } else {
      std::uint64_t r = rng.next_below(n - out.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (chosen[i]) continue;
        if (r-- == 0) {
          pick = i;
          break;
        }
      }
    }
    take(pick);
  }
  return out;
}

}  // namespace

ClusteringResult run_lloyd(const OneHotMatrix& x, const ClusteringConfig& config,
                           std::span<const Label> labels) {
  config.validate();
  if (config.k > x.n()) {
    throw ConfigError("k = " + std::to_string(config.k) + " exceeds n = " +
                      std::to_string(x.n()));
  }
  Stream rng = Stream::For(config.seed, StreamPurpose::kSeeding, 0, 0);
  std::vector<Centroid> initial =
      config.seeding == SeedingMethod::kUniformRandom
          ? seed_rows_uniform(x, config.k, rng)
          : seed_rows_kmeanspp(x, config.k, rng, resolve_threads(config.threads));
  return run_lloyd(x, config, std::move(initial), labels);
}

ClusteringResult run_lloyd(const OneHotMatrix& x, const ClusteringConfig& config,
                           std::vector<std::vector<double>> initial,
                           std::span<const Label> labels) {
  config.validate();
  const std::size_t n = x.n();
  const std::size_t dim = x.cols();
  const std::size_t k = initial.size();
  if (k == 0) throw ConfigError("at least one centroid is required");
  if (k > n) throw ConfigError("k exceeds n");
  for (const Centroid& c : initial) {
    if (c.size() != dim) throw DomainError("centroid dimension mismatch");
  }
  if (!labels.empty() && labels.size() != n) {
    throw DomainError("label vector length does not match the matrix");
  }
  const int workers = resolve_threads(config.threads);

  ClusteringResult result;
  std::vector<Centroid> centroids = std::move(initial);
  std::vector<Label> current(n), previous;
  std::vector<double> best_dist(n);
  for (std::size_t r = 1; r <= config.max_iter; ++r) {
#pragma omp parallel for schedule(static) num_threads(workers)
    for (std::size_t i = 0; i < n; ++i) {
      const double* p = x.row(i).data();
      double best = std::numeric_limits<double>::infinity();
      Label pick = 0;
      for (std::size_t c = 0; c < k; ++c) {
        const double dist = squared_distance(p, centroids[c].data(), dim);
        if (dist < best) {
          best = dist;
          pick = static_cast<Label>(c);
        }
      }
      current[i] = pick;
      best_dist[i] = best;
    }
    // Sequential sum keeps the objective independent of the thread count.
    double cost = 0.0;
    for (double v : best_dist) cost += v;
    IterationRecord rec{r, cost, std::nullopt};
    if (!labels.empty()) rec.accuracy = accuracy(current, labels);
    result.trace.push_back(rec);
    result.iterations = r;
    if (r > 1 && current == previous) {
      result.converged = true;
      break;
    }
    if (r == config.max_iter) break;

    std::vector<Centroid> sums(k, Centroid(dim, 0.0));
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const double* p = x.row(i).data();
      double* s = sums[current[i]].data();
      for (std::size_t t = 0; t < dim; ++t) s[t] += p[t];
      ++sizes[current[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] == 0) {
        Stream reseed = Stream::For(config.seed, StreamPurpose::kReseed, r, c);
        centroids[c] = copy_row(x, reseed.next_below(n));
        continue;
      }
      const auto size = static_cast<double>(sizes[c]);
      for (std::size_t t = 0; t < dim; ++t) centroids[c][t] = sums[c][t] / size;
    }
    previous = current;
  }
  result.assignment = std::move(current);
  result.centroids = std::move(centroids);
  return result;
}

}  // namespace softmodes
