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

#ifndef MEMOPACE_DATASET_H_
#define MEMOPACE_DATASET_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "memopace/error.h"

namespace memopace {

// Highest quantity a Memory League Numbers attempt can score.
inline constexpr int kMaxQuantity = 80;

inline constexpr std::string_view kTask1Header =
    "Score,CorrectData,SubsequentPerfectScore";

// One IAM numbers attempt paired with the perfect score the athlete should
// have aimed for.
struct AttemptRecord {
  std::int64_t score = 0;
  std::int64_t correct_data = 0;
  std::int64_t perfect = 0;

  friend bool operator==(const AttemptRecord&, const AttemptRecord&) = default;
};

// One Memory League Numbers match: digits recalled and seconds spent.
struct MatchSample {
  int quantity = 0;
  double time = 0.0;
  std::optional<std::chrono::year_month_day> date;

  friend bool operator==(const MatchSample&, const MatchSample&) = default;
};

struct SummaryStats {
  std::size_t count = 0;
  double mean = 0.0;
  double std = 0.0;  // sample (n - 1) standard deviation; 0 for one value
  double min = 0.0;
  double q25 = 0.0;
  double q50 = 0.0;
  double q75 = 0.0;
  double max = 0.0;
};

struct BoxplotStats {
  double median = 0.0;
  double lower_hinge = 0.0;
  double upper_hinge = 0.0;
  double lower_whisker = 0.0;
  double upper_whisker = 0.0;
  std::vector<double> outliers;  // ascending
};

struct SplitPair {
  std::vector<std::size_t> train_indices;  // ascending
  std::vector<std::size_t> test_indices;   // ascending
};

struct HistogramBin {
  double lower_edge = 0.0;
  std::size_t count = 0;

  friend bool operator==(const HistogramBin&, const HistogramBin&) = default;
};

// Result of a lenient parse: every valid row plus one Error per bad line.
template <typename Row>
struct ParseOutcome {
  std::vector<Row> rows;
  std::vector<Error> errors;
};

// Strict parsers: throw on the first bad line.
std::vector<AttemptRecord> parse_task1_csv(std::string_view text);
std::vector<MatchSample> parse_matchlog(std::string_view text);

// Lenient variants for ingestion reports. A malformed Task I header still
// throws, since no row can be interpreted without it.
ParseOutcome<AttemptRecord> parse_task1_csv_collect(std::string_view text);
ParseOutcome<MatchSample> parse_matchlog_collect(std::string_view text);

std::string format_task1_csv(std::span<const AttemptRecord> records);
std::string format_matchlog(std::span<const MatchSample> samples);
std::string format_date(const std::chrono::year_month_day& date);

// Drops rows with correct_data < perfect, then rows with perfect < score.
std::vector<AttemptRecord> clean_task1(std::span<const AttemptRecord> records);

// Drops non-80 samples slower than the high_pct time percentile, then samples
// whose quantity is below the low_pct quantity percentile of what remains.
std::vector<MatchSample> clean_task2(std::span<const MatchSample> samples,
                                     double high_pct = 95.0,
                                     double low_pct = 1.0);

// Linear interpolation between closest ranks at position (n - 1) * p / 100.
double percentile(std::span<const double> values, double p);

SummaryStats summary_stats(std::span<const double> values);

// Shuffles 0..n-1 with a seeded Fisher-Yates pass and sends the first
// ceil(n * test_fraction) indices to the test side.
SplitPair random_split(std::size_t n, double test_fraction, std::uint64_t seed);

// Index i is a test index iff i % modulus == 0.
SplitPair ordered_split(std::size_t n, std::size_t modulus = 5);

// Tukey hinges (halves share the median for odd n), 1.5 IQR whiskers.
BoxplotStats five_number_summary(std::span<const double> values);

std::vector<HistogramBin> histogram(std::span<const double> values,
                                    std::size_t bin_count);

// Column extraction helpers.
std::vector<double> quantities(std::span<const MatchSample> samples);
std::vector<double> times(std::span<const MatchSample> samples);

// Stable sort by time ascending.
std::vector<MatchSample> sort_by_time(std::span<const MatchSample> samples);

}  // namespace memopace

#endif  // MEMOPACE_DATASET_H_
