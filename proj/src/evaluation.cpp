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

#include "softmodes/evaluation.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "softmodes/error.hpp"

namespace softmodes {

std::uint64_t ConfusionMatrix::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

ConfusionMatrix confusion(std::span<const Label> pred,
                          std::span<const Label> truth) {
  if (pred.size() != truth.size()) {
    throw DomainError("prediction has " + std::to_string(pred.size()) +
                      " entries, truth has " + std::to_string(truth.size()));
  }
  if (pred.empty()) throw DomainError("cannot score an empty labeling");
  const std::size_t rows = *std::max_element(pred.begin(), pred.end()) + 1;
  const std::size_t cols = *std::max_element(truth.begin(), truth.end()) + 1;
  ConfusionMatrix m(rows, cols);
  for (std::size_t i = 0; i < pred.size(); ++i) ++m.at(pred[i], truth[i]);
  return m;
}

std::uint64_t max_matching_hungarian(const ConfusionMatrix& m) {
  const std::size_t size = std::max(m.rows(), m.cols());
  auto weight = [&](std::size_t r, std::size_t c) -> std::int64_t {
    return (r < m.rows() && c < m.cols()) ? static_cast<std::int64_t>(m.at(r, c))
                                          : 0;
  };
  // Shortest augmenting path formulation on cost = -weight, 1-based with a
  // virtual column 0.
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> u(size + 1, 0), v(size + 1, 0);
  std::vector<std::size_t> match(size + 1, 0), way(size + 1, 0);
  for (std::size_t row = 1; row <= size; ++row) {
    match[0] = row;
    std::size_t col0 = 0;
    std::vector<std::int64_t> minv(size + 1, kInf);
    std::vector<char> used(size + 1, 0);
    do {
      used[col0] = 1;
      const std::size_t r0 = match[col0];
      std::int64_t delta = kInf;
      std::size_t col1 = 0;
      for (std::size_t c = 1; c <= size; ++c) {
        if (used[c]) continue;
        const std::int64_t cur = -weight(r0 - 1, c - 1) - u[r0] - v[c];
        if (cur < minv[c]) {
          minv[c] = cur;
          way[c] = col0;
        }
        if (minv[c] < delta) {
          delta = minv[c];
          col1 = c;
        }
      }
      for (std::size_t c = 0; c <= size; ++c) {
        if (used[c]) {
          u[match[c]] += delta;
          v[c] -= delta;
        } else {
          minv[c] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  std::uint64_t total = 0;
  for (std::size_t c = 1; c <= size; ++c) {
    total += static_cast<std::uint64_t>(weight(match[c] - 1, c - 1));
  }
  return total;
}

std::uint64_t max_matching_exhaustive(const ConfusionMatrix& m) {
  const std::size_t size = std::max(m.rows(), m.cols());
  if (size > 9) throw DomainError("exhaustive matching limited to 9 clusters");
  std::vector<std::size_t> perm(size);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::uint64_t best = 0;
  do {
    std::uint64_t w = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (perm[r] < m.cols()) w += m.at(r, perm[r]);
    }
    best = std::max(best, w);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double accuracy(std::span<const Label> pred, std::span<const Label> truth) {
  const ConfusionMatrix m = confusion(pred, truth);
  const std::size_t size = std::max(m.rows(), m.cols());
  const std::uint64_t best =
      size <= 6 ? max_matching_exhaustive(m) : max_matching_hungarian(m);
  return static_cast<double>(best) / static_cast<double>(pred.size());
}

std::string format_confusion_csv(const ConfusionMatrix& m) {
  std::string out = "pred";
  for (std::size_t c = 0; c < m.cols(); ++c) out += ",truth" + std::to_string(c);
  out.push_back('\n');
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += std::to_string(r);
    for (std::size_t c = 0; c < m.cols(); ++c) out += "," + std::to_string(m.at(r, c));
    out.push_back('\n');
  }
  return out;
}

}  // namespace softmodes
