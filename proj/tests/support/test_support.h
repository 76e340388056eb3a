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

#ifndef MEMOPACE_TESTS_SUPPORT_TEST_SUPPORT_H_
#define MEMOPACE_TESTS_SUPPORT_TEST_SUPPORT_H_

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <system_error>
#include <vector>

#include "memopace/curvefit.h"
#include "memopace/dataset.h"
#include "memopace/random.h"

namespace memopace::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    auto tmpl = (std::filesystem::temp_directory_path() / "memopace-XXXXXX")
                    .string();
    if (!mkdtemp(tmpl.data())) std::abort();
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Uniform double in [lo, hi).
inline double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
}

inline double relative_error(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

// Capped hyperbola athlete with integer noise in {-noise..noise}, times
// spread over [12, 40] in runs of three close attempts separated by gaps.
inline std::vector<MatchSample> saturating_athlete(std::uint64_t seed,
                                                   std::size_t n = 150,
                                                   double a = -900.0,
                                                   double b = -50.0,
                                                   int noise = 2) {
  Rng rng(seed);
  std::vector<MatchSample> out;
  double t = 12.0;
  const double stride = 28.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 3 == 0 && i) t += 2.0 * stride;
    const double time = std::min(40.0, t + uniform(rng, 0.0, stride));
    const double truth = std::min(80.0, a / (time + b));
    const int e = static_cast<int>(rng.uniform_index(2 * noise + 1)) - noise;
    const int q = std::clamp(static_cast<int>(std::lround(truth)) + e, 0, 80);
    out.push_back({q, time, std::nullopt});
    t += stride / 3.0;
  }
  return out;
}

// Samples with dates, one every |day_step| days from |start|.
inline std::vector<MatchSample> with_dates(std::vector<MatchSample> samples,
                                           std::chrono::year_month_day start,
                                           int day_step) {
  auto day = std::chrono::sys_days(start);
  for (auto& s : samples) {
    s.date = std::chrono::year_month_day(day);
    day += std::chrono::days(day_step);
  }
  return samples;
}

// Anchor construction: quantities 77, 80, 80, 80, 80 at 12 s, exact 80s at 14..30 s.
inline std::vector<MatchSample> anchor_dataset() {
  std::vector<MatchSample> out;
  for (int q : {77, 80, 80, 80, 80}) out.push_back({q, 12.0, std::nullopt});
  for (int t = 14; t <= 30; ++t) out.push_back({80, double(t), std::nullopt});
  return out;
}

}  // namespace memopace::testing

#endif  // MEMOPACE_TESTS_SUPPORT_TEST_SUPPORT_H_
