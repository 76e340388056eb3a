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

#include "memopace/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <type_traits>

#include "memopace/random.h"

namespace memopace {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

// Splits on '\n' and strips one trailing '\r' per line. A trailing newline
// does not produce an extra empty line.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

template <typename T>
std::optional<T> parse_number(std::string_view token) {
  if (token.empty()) return std::nullopt;
  if (token.front() == '+') token.remove_prefix(1);
  T value{};
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) return std::nullopt;
  }
  return value;
}

std::optional<std::chrono::year_month_day> parse_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  const auto y = parse_number<int>(s.substr(0, 4));
  const auto m = parse_number<unsigned>(s.substr(5, 2));
  const auto d = parse_number<unsigned>(s.substr(8, 2));
  if (!y || !m || !d) return std::nullopt;
  const std::chrono::year_month_day ymd{std::chrono::year{*y},
                                        std::chrono::month{*m},
                                        std::chrono::day{*d}};
  if (!ymd.ok()) return std::nullopt;
  return ymd;
}

Error row_error(ErrorCode code, std::size_t line, const std::string& what) {
  return Error(code, "line " + std::to_string(line) + ": " + what, line);
}

// Returns the record or throws a row-level Error.
AttemptRecord parse_task1_row(std::string_view line, std::size_t line_no) {
  const auto fields = split_fields(line);
  if (fields.size() != 3) {
    throw row_error(ErrorCode::kMalformedRow, line_no,
                    "expected 3 fields, found " +
                        std::to_string(fields.size()));
  }
  std::int64_t values[3];
  for (std::size_t i = 0; i < 3; ++i) {
    const auto v = parse_number<std::int64_t>(fields[i]);
    if (!v) {
      throw row_error(ErrorCode::kMalformedRow, line_no,
                      "not an integer: '" + std::string(fields[i]) + "'");
    }
    if (*v < 0) {
      throw row_error(ErrorCode::kNegativeValue, line_no,
                      "negative value " + std::to_string(*v));
    }
    values[i] = *v;
  }
  return {values[0], values[1], values[2]};
}

MatchSample parse_matchlog_row(std::string_view line, std::size_t line_no) {
  const auto fields = split_fields(line);
  if (fields.size() < 2 || fields.size() > 3) {
    throw row_error(ErrorCode::kMalformedRow, line_no,
                    "expected quantity,time[,date]");
  }
  const auto quantity = parse_number<int>(fields[0]);
  if (!quantity) {
    throw row_error(ErrorCode::kMalformedRow, line_no,
                    "not an integer quantity: '" + std::string(fields[0]) +
                        "'");
  }
  const auto time = parse_number<double>(fields[1]);
  if (!time) {
    throw row_error(ErrorCode::kMalformedRow, line_no,
                    "not a decimal time: '" + std::string(fields[1]) + "'");
  }
  MatchSample sample{*quantity, *time, std::nullopt};
  if (fields.size() == 3) {
    sample.date = parse_date(fields[2]);
    if (!sample.date) {
      throw row_error(ErrorCode::kMalformedRow, line_no,
                      "not a YYYY-MM-DD date: '" + std::string(fields[2]) +
                          "'");
    }
  }
  if (sample.quantity < 0 || sample.quantity > kMaxQuantity) {
    throw row_error(ErrorCode::kQuantityOutOfRange, line_no,
                    "quantity " + std::to_string(sample.quantity) +
                        " outside [0, 80]");
  }
  if (!(sample.time > 0.0)) {
    throw row_error(ErrorCode::kNonPositiveTime, line_no,
                    "time must be positive");
  }
  return sample;
}

void check_task1_header(const std::vector<std::string_view>& lines) {
  if (lines.empty() || trim(lines.front()) != kTask1Header) {
    throw Error(ErrorCode::kMalformedHeader,
                "line 1: expected header '" + std::string(kTask1Header) + "'",
                1);
  }
}

template <typename Row, typename RowParser>
ParseOutcome<Row> collect_rows(const std::vector<std::string_view>& lines,
                               std::size_t first, RowParser parse_row,
                               bool stop_on_error) {
  ParseOutcome<Row> out;
  for (std::size_t i = first; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    try {
      out.rows.push_back(parse_row(lines[i], i + 1));
    } catch (const Error& e) {
      if (stop_on_error) throw;
      out.errors.push_back(e);
    }
  }
  return out;
}

void require_non_empty(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "empty input");
}

double percentile_sorted(std::span<const double> sorted, double p) {
  const double pos = static_cast<double>(sorted.size() - 1) * p / 100.0;
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

double median_sorted(std::span<const double> sorted) {
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

}  // namespace

std::vector<AttemptRecord> parse_task1_csv(std::string_view text) {
  const auto lines = split_lines(text);
  check_task1_header(lines);
  return collect_rows<AttemptRecord>(lines, 1, parse_task1_row, true).rows;
}

ParseOutcome<AttemptRecord> parse_task1_csv_collect(std::string_view text) {
  const auto lines = split_lines(text);
  check_task1_header(lines);
  return collect_rows<AttemptRecord>(lines, 1, parse_task1_row, false);
}

std::vector<MatchSample> parse_matchlog(std::string_view text) {
  return collect_rows<MatchSample>(split_lines(text), 0, parse_matchlog_row,
                                   true)
      .rows;
}

ParseOutcome<MatchSample> parse_matchlog_collect(std::string_view text) {
  return collect_rows<MatchSample>(split_lines(text), 0, parse_matchlog_row,
                                   false);
}

std::string format_date(const std::chrono::year_month_day& date) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(date.year()),
                unsigned(date.month()), unsigned(date.day()));
  return buf;
}

std::string format_task1_csv(std::span<const AttemptRecord> records) {
  std::string out(kTask1Header);
  out += '\n';
  for (const auto& r : records) {
    out += std::to_string(r.score) + ',' + std::to_string(r.correct_data) +
           ',' + std::to_string(r.perfect) + '\n';
  }
  return out;
}

std::string format_matchlog(std::span<const MatchSample> samples) {
  std::string out;
  char buf[64];
  for (const auto& s : samples) {
    // Shortest representation that parses back to the same double.
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), s.time);
    out += std::to_string(s.quantity) + ',' + std::string(buf, ptr);
    if (s.date) out += ',' + format_date(*s.date);
    out += '\n';
  }
  return out;
}

std::vector<AttemptRecord> clean_task1(std::span<const AttemptRecord> records) {
  std::vector<AttemptRecord> first_pass;
  for (const auto& r : records) {
    if (!(r.correct_data < r.perfect)) first_pass.push_back(r);
  }
  std::vector<AttemptRecord> out;
  for (const auto& r : first_pass) {
    if (!(r.perfect < r.score)) out.push_back(r);
  }
  return out;
}

std::vector<MatchSample> clean_task2(std::span<const MatchSample> samples,
                                     double high_pct, double low_pct) {
  if (samples.empty()) throw Error(ErrorCode::kEmptyInput, "no samples");
  const auto all_times = times(samples);
  const double time_cut = percentile(all_times, high_pct);
  std::vector<MatchSample> first_pass;
  for (const auto& s : samples) {
    const bool slow_miss = s.quantity != kMaxQuantity && s.time > time_cut;
    if (!slow_miss) first_pass.push_back(s);
  }
  // The high-time mask never removes an 80, so first_pass is non-empty.
  const auto remaining = quantities(first_pass);
  const double quantity_cut = percentile(remaining, low_pct);
  std::vector<MatchSample> out;
  for (const auto& s : first_pass) {
    if (!(s.quantity < quantity_cut)) out.push_back(s);
  }
  return out;
}

double percentile(std::span<const double> values, double p) {
  require_non_empty(values);
  if (!(p >= 0.0 && p <= 100.0)) {
    throw Error(ErrorCode::kPOutOfRange, "percentile outside [0, 100]");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return percentile_sorted(sorted, p);
}

SummaryStats summary_stats(std::span<const double> values) {
  require_non_empty(values);
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  SummaryStats s;
  s.count = sorted.size();
  const double n = static_cast<double>(s.count);
  s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : sorted) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / (n - 1.0));
  }
  s.min = sorted.front();
  s.q25 = percentile_sorted(sorted, 25.0);
  s.q50 = percentile_sorted(sorted, 50.0);
  s.q75 = percentile_sorted(sorted, 75.0);
  s.max = sorted.back();
  return s;
}

SplitPair random_split(std::size_t n, double test_fraction,
                       std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw Error(ErrorCode::kBadFraction, "test fraction must be in (0, 1)");
  }
  if (n < 2) throw Error(ErrorCode::kTooFewRows, "need at least 2 rows");
  // The epsilon absorbs representation error such as 10 * 0.2 > 2.
  auto n_test = static_cast<std::size_t>(
      std::ceil(static_cast<double>(n) * test_fraction - 1e-9));
  n_test = std::clamp<std::size_t>(n_test, 1, n - 1);

  Rng rng(seed);
  const auto perm = shuffled_indices(n, rng);
  SplitPair split;
  split.test_indices.assign(perm.begin(), perm.begin() + n_test);
  split.train_indices.assign(perm.begin() + n_test, perm.end());
  std::sort(split.test_indices.begin(), split.test_indices.end());
  std::sort(split.train_indices.begin(), split.train_indices.end());
  return split;
}

SplitPair ordered_split(std::size_t n, std::size_t modulus) {
  if (modulus < 2) throw Error(ErrorCode::kBadArgument, "modulus must be >= 2");
  if (n < modulus) {
    throw Error(ErrorCode::kTooFewRows,
                "need at least " + std::to_string(modulus) + " rows");
  }
  SplitPair split;
  for (std::size_t i = 0; i < n; ++i) {
    (i % modulus == 0 ? split.test_indices : split.train_indices).push_back(i);
  }
  return split;
}

BoxplotStats five_number_summary(std::span<const double> values) {
  require_non_empty(values);
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const std::size_t half = (n + 1) / 2;

  BoxplotStats box;
  box.median = median_sorted(sorted);
  box.lower_hinge = median_sorted(std::span(sorted).first(half));
  box.upper_hinge = median_sorted(std::span(sorted).last(half));
  const double iqr = box.upper_hinge - box.lower_hinge;
  const double lo_fence = box.lower_hinge - 1.5 * iqr;
  const double hi_fence = box.upper_hinge + 1.5 * iqr;

  box.lower_whisker = box.lower_hinge;
  box.upper_whisker = box.upper_hinge;
  bool have_lower = false;
  for (double v : sorted) {
    if (v < lo_fence || v > hi_fence) {
      box.outliers.push_back(v);
      continue;
    }
    if (!have_lower) {
      box.lower_whisker = v;
      have_lower = true;
    }
    box.upper_whisker = v;
  }
  return box;
}

std::vector<HistogramBin> histogram(std::span<const double> values,
                                    std::size_t bin_count) {
  require_non_empty(values);
  if (bin_count < 1) throw Error(ErrorCode::kBadBinCount, "need >= 1 bin");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double width = (*hi_it - lo) / static_cast<double>(bin_count);
  std::vector<HistogramBin> bins(bin_count);
  for (std::size_t i = 0; i < bin_count; ++i) {
    bins[i].lower_edge = lo + width * static_cast<double>(i);
  }
  for (double v : values) {
    std::size_t idx = 0;
    if (width > 0.0) {
      idx = static_cast<std::size_t>(std::floor((v - lo) / width));
      idx = std::min(idx, bin_count - 1);
    }
    ++bins[idx].count;
  }
  return bins;
}

std::vector<double> quantities(std::span<const MatchSample> samples) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.quantity);
  return out;
}

std::vector<double> times(std::span<const MatchSample> samples) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.time);
  return out;
}

std::vector<MatchSample> sort_by_time(std::span<const MatchSample> samples) {
  std::vector<MatchSample> out(samples.begin(), samples.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const MatchSample& a, const MatchSample& b) {
                     return a.time < b.time;
                   });
  return out;
}

}  // namespace memopace
