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

#ifndef SOFTMODES_EVALUATION_HPP_
#define SOFTMODES_EVALUATION_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "softmodes/dataset.hpp"

namespace softmodes {

// Counts of (predicted cluster, true label) pairs. Rows are indexed by
// predicted id, columns by true label.
class ConfusionMatrix {
 public:
  ConfusionMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), counts_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint64_t at(std::size_t pred, std::size_t truth) const {
    return counts_[pred * cols_ + truth];
  }
  std::uint64_t& at(std::size_t pred, std::size_t truth) {
    return counts_[pred * cols_ + truth];
  }
  std::uint64_t total() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint64_t> counts_;
};

// Rows = max(pred) + 1, cols = max(truth) + 1.
// Throws DomainError on a length mismatch or empty input.
ConfusionMatrix confusion(std::span<const Label> pred,
                          std::span<const Label> truth);

// Largest total count over injective maps from predicted ids to true labels,
// after padding the matrix to square with zeros.
std::uint64_t max_matching_hungarian(const ConfusionMatrix& m);
// Same quantity by trying every permutation; for small matrices only
// (throws DomainError above 9 rows or columns).
std::uint64_t max_matching_exhaustive(const ConfusionMatrix& m);

// Clustering accuracy: best injective matching weight divided by n. Uses
// exhaustive search when the padded size is at most 6 and the Hungarian
// method otherwise.
double accuracy(std::span<const Label> pred, std::span<const Label> truth);

// CSV: header "pred,truth0,truth1,...", one row per predicted id.
std::string format_confusion_csv(const ConfusionMatrix& m);

}  // namespace softmodes

#endif  // SOFTMODES_EVALUATION_HPP_
