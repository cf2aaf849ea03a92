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

#include "softmodes/rounding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "softmodes/error.hpp"

namespace softmodes {

SimplexPoint::SimplexPoint(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) throw DomainError("simplex point must be non-empty");
  double sum = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw DomainError("simplex weights must be finite and non-negative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kSimplexSumTolerance) {
    throw DomainError("simplex weights sum to " + std::to_string(sum));
  }
}

SimplexPoint SimplexPoint::FromCounts(std::span<const std::size_t> counts) {
  const std::size_t total =
      std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  if (total == 0) throw DomainError("frequency vector of an empty cluster");
  std::vector<double> w(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    w[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  }
  return SimplexPoint(std::move(w));
}

SimplexPoint SimplexPoint::Center(std::size_t size) {
  if (size == 0) throw DomainError("simplex point must be non-empty");
  return SimplexPoint(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

RoundingSpec RoundingSpec::Soft(double t) {
  if (!std::isfinite(t) || t < 1.0) {
    throw DomainError("soft rounding exponent must be finite and >= 1, got " +
                      std::to_string(t));
  }
  return RoundingSpec(RoundingKind::kSoft, t);
}

RoundingSpec RoundingSpec::Parse(const std::string& name, double t) {
  if (name == "plurality" || name == "kmodes") return Plurality();
  if (name == "uniform") return Uniform();
  if (name == "soft") return Soft(t);
  throw ConfigError("unknown rounding '" + name +
                    "' (expected plurality, uniform or soft)");
}

std::string RoundingSpec::ToString() const {
  switch (kind_) {
    case RoundingKind::kPlurality:
      return "plurality";
    case RoundingKind::kUniform:
      return "uniform";
    case RoundingKind::kSoft: {
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof buf, t_);
      return "soft(" + std::string(buf, res.ptr) + ")";
    }
  }
  return "?";
}

SimplexPoint round(const SimplexPoint& x, const RoundingSpec& spec) {
  const std::span<const double> w = x.weights();
  const double top = *std::max_element(w.begin(), w.end());
  switch (spec.kind()) {
    case RoundingKind::kUniform:
      return x;
    case RoundingKind::kPlurality: {
      const auto ties = static_cast<std::size_t>(std::count(w.begin(), w.end(), top));
      const double share = 1.0 / static_cast<double>(ties);
      std::vector<double> out(w.size(), 0.0);
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == top) out[i] = share;
      }
      return SimplexPoint(std::move(out));
    }
    case RoundingKind::kSoft: {
      // x_i^t / sum x^t is a no-op at t = 1.
      if (spec.t() == 1.0) return x;
      std::vector<double> out(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) {
        const double v = std::pow(w[i] / top, spec.t());
        out[i] = v < kSoftFlushThreshold ? 0.0 : v;
      }
      // Summing in sorted order makes the normalizer independent of the
      // coordinate order, so the map commutes exactly with permutations.
      std::vector<double> sorted = out;
      std::sort(sorted.begin(), sorted.end());
      double sum = 0.0;
      for (double v : sorted) sum += v;
      for (double& v : out) v /= sum;
      return SimplexPoint(std::move(out));
    }
  }
  throw DomainError("unknown rounding kind");
}

std::size_t sample_category(const SimplexPoint& x, Stream& rng) {
  const std::span<const double> w = x.weights();
  double total = 0.0;
  for (double v : w) total += v;
  const double target = rng.next_double() * total;
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] <= 0.0) continue;
    cumulative += w[i];
    last_positive = i;
    if (target < cumulative) return i;
  }
  return last_positive;
}

std::vector<FieldSample> field_grid(const RoundingSpec& spec,
                                    std::size_t resolution) {
  if (resolution < 2) throw DomainError("field resolution must be at least 2");
  const auto r = static_cast<double>(resolution);
  std::vector<FieldSample> samples;
  samples.reserve((resolution + 1) * (resolution + 2) / 2);
  for (std::size_t a = 0; a <= resolution; ++a) {
    for (std::size_t b = 0; a + b <= resolution; ++b) {
      const std::size_t c = resolution - a - b;
      const SimplexPoint x({static_cast<double>(a) / r,
                            static_cast<double>(b) / r,
                            static_cast<double>(c) / r});
      const SimplexPoint y = round(x, spec);
      FieldSample s;
      for (std::size_t i = 0; i < 3; ++i) {
        s.point[i] = x[i];
        s.displacement[i] = y[i] - x[i];
      }
      samples.push_back(s);
    }
  }
  return samples;
}

std::string format_field_csv(std::span<const FieldSample> samples) {
  std::string out = "x1,x2,x3,dx1,dx2,dx3\n";
  char buf[64];
  auto put = [&](double v, char sep) {
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
    out.push_back(sep);
  };
  for (const FieldSample& s : samples) {
    put(s.point[0], ',');
    put(s.point[1], ',');
    put(s.point[2], ',');
    put(s.displacement[0], ',');
    put(s.displacement[1], ',');
    put(s.displacement[2], '\n');
  }
  return out;
}

}  // namespace softmodes
