// Copyright 2026 The memopace Authors.
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

#include "memopace/random.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

namespace memopace {
namespace {

TEST(Rng, MatchesStandardEngineSequence) {
  // The 10000th output of a default-seeded mt19937_64 is fixed by the C++
  // standard.
  Rng rng(5489u);
  std::uint64_t v = 0;
  for (int i = 0; i < 10000; ++i) v = rng.next();
  EXPECT_EQ(v, 9981545732273789042ULL);
}

TEST(Rng, UniformIndexInRangeAndRoughlyFlat) {
  Rng rng(7);
  std::vector<int> counts(6, 0);
  for (int i = 0; i < 60000; ++i) {
    const auto k = rng.uniform_index(6);
    ASSERT_LT(k, 6u);
    ++counts[k];
  }
  for (int c : counts) {
    EXPECT_GT(c, 9500);
    EXPECT_LT(c, 10500);
  }
  EXPECT_EQ(rng.uniform_index(1), 0u);
}

TEST(Rng, ShuffleIsPermutationAndSeedDependent) {
  Rng a(1), b(1), c(2);
  const auto pa = shuffled_indices(100, a);
  const auto pb = shuffled_indices(100, b);
  const auto pc = shuffled_indices(100, c);
  EXPECT_EQ(pa, pb);
  EXPECT_NE(pa, pc);
  auto sorted = pa;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> iota(100);
  std::iota(iota.begin(), iota.end(), std::size_t{0});
  EXPECT_EQ(sorted, iota);
  EXPECT_TRUE(shuffled_indices(0, a).empty());
}

TEST(DeriveSeed, DistinctStreams) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(42, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(derive_seed(42, 3), derive_seed(42, 3));
  EXPECT_NE(derive_seed(42, 3), derive_seed(43, 3));
}

}  // namespace
}  // namespace memopace
