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

// Rounding functions on the probability simplex.
//
// A rounding function maps a frequency vector x in the simplex to another
// point of the simplex while preserving the order of coordinates: if
// x_i >= x_j then round(x)_i >= round(x)_j. The clustering engine rounds the
// per-attribute value frequencies of a cluster and then samples the new
// center value from the result.
//
//   Plurality   1/|argmax| on every maximal coordinate, 0 elsewhere.
//   Uniform     the identity map.
//   Soft(t)     x_i^t / sum_j x_j^t, for real t >= 1. Soft(1) is Uniform
//               and Soft(t) tends to Plurality as t grows.

#ifndef SOFTMODES_ROUNDING_HPP_
#define SOFTMODES_ROUNDING_HPP_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "softmodes/random.hpp"

namespace softmodes {

// Tolerance on the coordinate sum accepted from callers.
inline constexpr double kSimplexSumTolerance = 1e-9;

// A probability vector over the values of one attribute.
class SimplexPoint {
 public:
  // Throws DomainError on negative or non-finite entries, an empty vector,
  // or a coordinate sum further than kSimplexSumTolerance from 1.
  explicit SimplexPoint(std::vector<double> weights);

  // Normalized counts; at least one count must be positive.
  static SimplexPoint FromCounts(std::span<const std::size_t> counts);

  // The barycenter (1/s, ..., 1/s).
  static SimplexPoint Center(std::size_t size);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }

  bool operator==(const SimplexPoint&) const = default;

 private:
  std::vector<double> weights_;
};

enum class RoundingKind { kPlurality, kUniform, kSoft };

class RoundingSpec {
 public:
  static RoundingSpec Plurality() { return RoundingSpec(RoundingKind::kPlurality, 0); }
  static RoundingSpec Uniform() { return RoundingSpec(RoundingKind::kUniform, 1); }
  // Throws DomainError unless t is finite and t >= 1.
  static RoundingSpec Soft(double t);

  // Parses "plurality", "uniform" or "soft"; `t` is used only for soft.
  static RoundingSpec Parse(const std::string& name, double t);

  RoundingKind kind() const { return kind_; }
  // Exponent of the soft map; meaningful only for kSoft.
  double t() const { return t_; }

  // "plurality", "uniform", "soft(2.5)".
  std::string ToString() const;

  bool operator==(const RoundingSpec&) const = default;

 private:
  RoundingSpec(RoundingKind kind, double t) : kind_(kind), t_(t) {}
  RoundingKind kind_;
  double t_;
};

// Soft values below this after max-scaling are flushed to zero.
inline constexpr double kSoftFlushThreshold = 1e-300;

SimplexPoint round(const SimplexPoint& x, const RoundingSpec& spec);

// Inverse-CDF draw: returns i with probability x[i]. Never returns an index
// whose weight is zero.
std::size_t sample_category(const SimplexPoint& x, Stream& rng);

struct FieldSample {
  std::array<double, 3> point;
  std::array<double, 3> displacement;
};

// Barycentric grid on the 2-simplex with `resolution` steps per edge,
// i.e. (resolution + 1)(resolution + 2)/2 points including the boundary.
// Each point is paired with round(x) - x. Throws DomainError if
// resolution < 2.
std::vector<FieldSample> field_grid(const RoundingSpec& spec,
                                    std::size_t resolution);

// CSV with header x1,x2,x3,dx1,dx2,dx3.
std::string format_field_csv(std::span<const FieldSample> samples);

}  // namespace softmodes

#endif  // SOFTMODES_ROUNDING_HPP_
