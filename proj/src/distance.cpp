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

#include "softmodes/distance.hpp"

#include <string>

#include "softmodes/error.hpp"

namespace softmodes {

std::size_t hamming(std::span<const Category> a, std::span<const Category> b) {
  if (a.size() != b.size()) {
    throw DomainError("hamming: length mismatch (" + std::to_string(a.size()) +
                      " vs " + std::to_string(b.size()) + ")");
  }
  return detail::hamming_unchecked(a.data(), b.data(), a.size());
}

void validate_center(const CategoricalDataset& ds, const Center& c) {
  if (c.values.size() != ds.d()) {
    throw DomainError("center has " + std::to_string(c.values.size()) +
                      " attributes, dataset has " + std::to_string(ds.d()));
  }
  for (std::size_t j = 0; j < ds.d(); ++j) {
    if (c.values[j] >= ds.arity(j)) {
      throw DomainError("center value out of range at attribute " +
                        std::to_string(j));
    }
  }
}

}  // namespace softmodes
