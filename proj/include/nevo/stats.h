/* Copyright 2026 The Nevo Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef NEVO_STATS_H_
#define NEVO_STATS_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nevo/chains.h"
#include "nevo/resolve.h"
#include "nevo/textscan.h"

namespace nevo::stats {

// Upper edge of an open-ended bucket.
inline constexpr std::int64_t kOpenEnd = std::numeric_limits<std::int64_t>::max();

struct Bucket {
  std::int64_t lo = 0;
  std::int64_t hi = kOpenEnd;
  std::int64_t count = 0;

  friend bool operator==(const Bucket&, const Bucket&) = default;
};

// {0, 1, 3, 10, 50, open}.
std::vector<std::int64_t> default_edges();

// "0,1,3,10,inf". Throws Error(kBadEdges).
std::vector<std::int64_t> parse_edges(std::string_view text);

// Right-open buckets [edges[i], edges[i+1]). Throws Error(kBadEdges) unless
// edges strictly increase, Error(kOutOfRange) for a distance outside them.
std::vector<Bucket> histogram(std::span<const int> distances, std::span<const std::int64_t> edges);

// One scanned change as handed from the scan stage to the report stage.
struct ScanRecord {
  std::string entity_id;
  textscan::MentionScan scan;
  std::optional<textscan::Excerpt> excerpt;
};

struct StatsReport {
  std::int64_t entities_total = 0;
  std::int64_t entities_resolved = 0;
  std::int64_t changes_total = 0;
  std::int64_t changes_of_resolved = 0;
  std::int64_t changes_dated = 0;
  std::int64_t dated_entities = 0;
  std::int64_t mentions_found = 0;
  std::int64_t distance_sum = 0;
  std::optional<double> distance_mean;
  std::optional<double> distance_median;  // lower median
  std::int64_t under_10_count = 0;
  std::int64_t under_3_count = 0;
  std::vector<Bucket> histogram;

  // Percentages (0-100), absent when the denominator is zero.
  std::optional<double> resolved_pct() const;              // of entities_total
  std::optional<double> dated_pct() const;                 // of changes_total
  std::optional<double> dated_entities_pct() const;        // of entities_total
  std::optional<double> mention_pct() const;               // of changes_dated
  std::optional<double> under_10_pct() const;              // of mentions_found
  std::optional<double> under_3_of_under_10_pct() const;   // of under_10_count
  std::optional<double> under_3_pct() const;               // of mentions_found

  friend bool operator==(const StatsReport&, const StatsReport&) = default;
};

// `resolved` is matched to `chains` by chain id; `scans` are the dated
// changes of resolved entities. Throws Error(kEmptyInput) for zero chains.
StatsReport aggregate(std::span<const chains::EntityChain> chains,
                      std::span<const resolve::ResolvedEntity> resolved,
                      std::span<const ScanRecord> scans,
                      std::span<const std::int64_t> edges);

// Percentage of num/den rounded half-up to one decimal, e.g. "62.3".
std::string format_percent(std::int64_t num, std::int64_t den);

enum class ReportFormat { kText, kStructured };

std::string render_report(const StatsReport& report, ReportFormat format);

// Inverse of render_report(..., kStructured). Throws Error(kBadFormat).
StatsReport parse_structured_report(std::string_view text);

struct EvolutionRecord {
  std::string entity_id;
  std::string preceding;
  std::string succeeding;
  chains::PartialDate date;
  std::string article_title;
  int distance = 0;
  std::string excerpt;
  std::vector<std::string> signal_words;
  std::string source_list;
  std::string snapshot_id;
};

// One record per mentioned change, ordered by entity id, then date.
std::vector<EvolutionRecord> export_kb(std::span<const ScanRecord> scans,
                                       const std::string& snapshot_id);

// JSON Lines, one record per line, LF terminated.
std::string render_kb(std::span<const EvolutionRecord> records);

}  // namespace nevo::stats

#endif  // NEVO_STATS_H_
