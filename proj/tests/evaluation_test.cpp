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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "softmodes/error.hpp"
#include "softmodes/evaluation.hpp"
#include "softmodes/random.hpp"

using namespace softmodes;

namespace {

// Independent oracle: best injective matching by recursion over truth
// columns, each predicted row taking at most one.
std::uint64_t oracle_best(const std::vector<std::vector<std::uint64_t>>& m, std::size_t row,
                          std::vector<bool>& used) {
  if (row == m.size()) return 0;
  // Leaving a row unmatched is allowed when rows outnumber columns.
  std::uint64_t best = oracle_best(m, row + 1, used);
  for (std::size_t c = 0; c < used.size(); ++c) {
    if (used[c]) continue;
    used[c] = true;
    best = std::max(best, m[row][c] + oracle_best(m, row + 1, used));
    used[c] = false;
  }
  return best;
}

std::vector<Label> random_labels(Stream& rng, std::size_t n, std::size_t k) {
  std::vector<Label> out(n);
  for (auto& l : out) l = static_cast<Label>(rng.next_below(k));
  return out;
}

}  // namespace

TEST_CASE("confusion examples") {
  SUBCASE("identical balanced labels") {
    const std::vector<Label> y = {0, 1, 0, 1};
    const ConfusionMatrix m = confusion(y, y);
    CHECK(m.at(0, 0) == 2);
    CHECK(m.at(1, 1) == 2);
    CHECK(m.at(0, 1) == 0);
    CHECK(m.at(1, 0) == 0);
  }
  SUBCASE("constant prediction") {
    const std::vector<Label> pred(5, 0), truth = {0, 1, 2, 1, 0};
    const ConfusionMatrix m = confusion(pred, truth);
    CHECK(m.rows() == 1);
    CHECK(m.at(0, 0) == 2);
    CHECK(m.at(0, 1) == 2);
    CHECK(m.at(0, 2) == 1);
  }
  SUBCASE("hand tally") {
    const std::vector<Label> pred = {0, 0, 1, 2, 2, 1, 0, 2};
    const std::vector<Label> truth = {1, 1, 0, 0, 2, 0, 1, 2};
    const ConfusionMatrix m = confusion(pred, truth);
    CHECK(m.at(0, 1) == 3);
    CHECK(m.at(1, 0) == 2);
    CHECK(m.at(2, 0) == 1);
    CHECK(m.at(2, 2) == 2);
    CHECK(m.total() == 8);
    CHECK(accuracy(pred, truth) == 7.0 / 8.0);
    CHECK(format_confusion_csv(m) == "pred,truth0,truth1,truth2\n0,0,3,0\n1,2,0,0\n2,1,0,2\n");
  }
  SUBCASE("errors") {
    const std::vector<Label> a = {0, 1}, b = {0};
    CHECK_THROWS_AS(confusion(a, b), DomainError);
    CHECK_THROWS_AS(confusion({}, {}), DomainError);
    CHECK_THROWS_AS(accuracy(a, b), DomainError);
  }
}

TEST_CASE("accuracy examples") {
  const std::vector<Label> truth = {0, 0, 1, 1, 1};
  CHECK(accuracy(truth, truth) == 1.0);
  const std::vector<Label> swapped = {1, 1, 0, 0, 0};
  CHECK(accuracy(swapped, truth) == 1.0);
  // Two predicted clusters cannot both map to label 1.
  const std::vector<Label> split = {0, 0, 1, 1, 2};
  CHECK(accuracy(split, truth) == 0.8);

  Stream rng(1, 0);
  std::vector<Label> balanced(10000);
  for (std::size_t i = 0; i < balanced.size(); ++i) balanced[i] = i % 2;
  CHECK(std::abs(accuracy(random_labels(rng, 10000, 2), balanced) - 0.5) <= 0.02);
}

TEST_CASE("hungarian and exhaustive agree with an independent oracle") {
  Stream rng(2, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t rows = 1 + rng.next_below(6);
    const std::size_t cols = 1 + rng.next_below(6);
    ConfusionMatrix m(rows, cols);
    std::vector<std::vector<std::uint64_t>> plain(rows, std::vector<std::uint64_t>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = plain[r][c] = rng.next_below(50);
    }
    std::vector<bool> used(cols, false);
    const std::uint64_t expect = oracle_best(plain, 0, used);
    CHECK(max_matching_hungarian(m) == expect);
    CHECK(max_matching_exhaustive(m) == expect);
  }
}

TEST_CASE("hungarian on larger matrices beats every sampled mapping") {
  Stream rng(3, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = 7 + rng.next_below(20);
    ConfusionMatrix m(k, k);
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) m.at(r, c) = rng.next_below(1000);
    }
    const std::uint64_t best = max_matching_hungarian(m);
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    for (int s = 0; s < 200; ++s) {
      std::shuffle(perm.begin(), perm.end(), rng);
      std::uint64_t w = 0;
      for (std::size_t r = 0; r < k; ++r) w += m.at(r, perm[r]);
      CHECK(w <= best);
    }
  }
  ConfusionMatrix big(10, 10);
  CHECK_THROWS_AS(max_matching_exhaustive(big), DomainError);
}

TEST_CASE("accuracy is invariant under relabeling") {
  Stream rng(4, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + rng.next_below(9);
    const auto pred = random_labels(rng, 300, k);
    const auto truth = random_labels(rng, 300, k);
    const double base = accuracy(pred, truth);
    std::vector<Label> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Label> pred2(pred.size()), truth2(truth.size());
    for (std::size_t i = 0; i < pred.size(); ++i) {
      pred2[i] = perm[pred[i]];
      truth2[i] = perm[truth[i]];
    }
    CHECK(accuracy(pred2, truth) == base);
    CHECK(accuracy(pred, truth2) == base);
    // Identity mapping is one candidate.
    std::size_t agree = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) agree += pred[i] == truth[i];
    CHECK(base >= agree / 300.0);
  }
}
