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

#ifndef SOFTMODES_DISTANCE_HPP_
#define SOFTMODES_DISTANCE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "softmodes/dataset.hpp"

namespace softmodes {

// A cluster representative: one category index per attribute.
struct Center {
  std::vector<Category> values;

  std::span<const Category> view() const { return values; }
  bool operator==(const Center&) const = default;
};

// Number of coordinates on which a and b differ.
// Throws DomainError if the lengths differ.
std::size_t hamming(std::span<const Category> a, std::span<const Category> b);

namespace detail {

// Hot-loop variant without the length check. Written as a branch-free count
// so that the compiler vectorizes it.
inline std::size_t hamming_unchecked(const Category* a, const Category* b,
                                     std::size_t d) {
  // A 32-bit accumulator keeps the loop in one lane width.
  std::uint32_t diff = 0;
  for (std::size_t j = 0; j < d; ++j) diff += (a[j] != b[j]);
  return diff;
}

}  // namespace detail

// Throws DomainError unless c has d entries each below the attribute arity.
void validate_center(const CategoricalDataset& ds, const Center& c);

}  // namespace softmodes

#endif  // SOFTMODES_DISTANCE_HPP_
