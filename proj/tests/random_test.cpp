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

#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "softmodes/random.hpp"

using namespace softmodes;

TEST_CASE("philox4x32_10 matches the Random123 known-answer vectors") {
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) ==
        Philox4x32Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                      {0xffffffff, 0xffffffff}) ==
        Philox4x32Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                      {0xa4093822, 0x299f31d0}) ==
        Philox4x32Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and independent per index") {
  Stream a(42, 7, 3), b(42, 7, 3), c(42, 8, 3), e(42, 7, 4), f(43, 7, 3);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Stream a2(42, 7, 3);
  int same_c = 0, same_e = 0, same_f = 0;
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t v = a2.next_u64();
    same_c += v == c.next_u64();
    same_e += v == e.next_u64();
    same_f += v == f.next_u64();
  }
  CHECK(same_c == 0);
  CHECK(same_e == 0);
  CHECK(same_f == 0);
}

TEST_CASE("copying a stream forks it") {
  Stream a(1, 2);
  a.next_u32();
  Stream b = a;
  for (int i = 0; i < 10; ++i) CHECK(a.next_u32() == b.next_u32());
}

TEST_CASE("derive_seed depends on every part and on order") {
  std::set<std::uint64_t> seen;
  seen.insert(derive_seed(1, {}));
  seen.insert(derive_seed(1, {0}));
  seen.insert(derive_seed(1, {1}));
  seen.insert(derive_seed(1, {1, 2}));
  seen.insert(derive_seed(1, {2, 1}));
  seen.insert(derive_seed(2, {1, 2}));
  CHECK(seen.size() == 6);
  CHECK(derive_seed(9, {3, 4}) == derive_seed(9, {3, 4}));
}

TEST_CASE("next_double lies in [0, 1) and has the right mean") {
  Stream s(5, 0);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = s.next_double();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  // sd of the mean is sqrt(1/12 / n) ~ 0.00091.
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.005));
}

TEST_CASE("next_below is uniform over small ranges") {
  Stream s(11, 0);
  const int n = 60000;
  std::map<std::uint64_t, int> counts;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t v = s.next_below(6);
    REQUIRE(v < 6);
    ++counts[v];
  }
  // Expected 10000 per bucket, sd ~ 91; 5 sd.
  for (const auto& [v, c] : counts) CHECK(std::abs(c - 10000) < 460);
  CHECK(s.next_below(1) == 0);
}
