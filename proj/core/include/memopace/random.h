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

#ifndef MEMOPACE_RANDOM_H_
#define MEMOPACE_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace memopace {

// Seeded generator shared by every randomized routine (splits, folds,
// bootstrap). std::mt19937_64's output sequence is fixed by the standard;
// bounded draws use rejection sampling below rather than
// std::uniform_int_distribution, whose algorithm is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound). bound must be > 0.
  std::size_t uniform_index(std::size_t bound);

 private:
  std::mt19937_64 engine_;
};

// Derives an independent stream seed for sub-task `index` (e.g. one tree of a
// forest) via a splitmix64 finalizer.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// 0..n-1 shuffled by a Fisher-Yates pass driven by `rng`.
std::vector<std::size_t> shuffled_indices(std::size_t n, Rng& rng);

}  // namespace memopace

#endif  // MEMOPACE_RANDOM_H_
