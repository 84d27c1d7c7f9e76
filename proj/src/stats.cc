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

#include "nevo/stats.h"

#include <algorithm>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "nevo/error.h"
#include "nevo/unicode.h"

namespace nevo::stats {
namespace {

using ordered_json = nlohmann::ordered_json;

std::optional<double> percent(std::int64_t num, std::int64_t den) {
  if (den == 0) return std::nullopt;
  return 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

// floor(value * 10 + 0.5) for value = num / den, exactly.
std::string one_decimal(std::int64_t num, std::int64_t den) {
  const std::int64_t tenths = (20 * num + den) / (2 * den);
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

std::string ratio_line(std::string_view label, std::int64_t num, std::int64_t den) {
  return std::string(label) + ": " + std::to_string(num) + "/" + std::to_string(den) + " (" +
         format_percent(num, den) + ")\n";
}

std::string edge_text(std::int64_t edge) {
  return edge == kOpenEnd ? "inf" : std::to_string(edge);
}

ordered_json optional_json(const std::optional<double>& value) {
  return value ? ordered_json(*value) : ordered_json(nullptr);
}

std::optional<double> optional_double(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<double>();
}

}  // namespace

std::vector<std::int64_t> default_edges() { return {0, 1, 3, 10, 50, kOpenEnd}; }

std::vector<std::int64_t> parse_edges(std::string_view text) {
  std::vector<std::int64_t> edges;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    const std::string token(unicode::trim(text.substr(start, comma - start)));
    if (token == "inf" || token == "∞") {
      edges.push_back(kOpenEnd);
    } else {
      std::size_t used = 0;
      long long value = 0;
      try {
        value = std::stoll(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (token.empty() || used != token.size()) {
        throw Error(ErrorCode::kBadEdges, "'" + std::string(text) + "'");
      }
      edges.push_back(value);
    }
    if (comma == text.size()) break;
    start = comma + 1;
  }
  return edges;
}

std::vector<Bucket> histogram(std::span<const int> distances,
                              std::span<const std::int64_t> edges) {
  if (edges.size() < 2) throw Error(ErrorCode::kBadEdges, "need at least two edges");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i] <= edges[i - 1]) throw Error(ErrorCode::kBadEdges, "edges must increase");
  }
  std::vector<Bucket> buckets;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) buckets.push_back({edges[i], edges[i + 1], 0});
  for (const int d : distances) {
    const auto it = std::upper_bound(edges.begin(), edges.end(), std::int64_t{d});
    if (it == edges.begin() || it == edges.end()) {
      throw Error(ErrorCode::kOutOfRange, "distance " + std::to_string(d) + " outside edges");
    }
    ++buckets[static_cast<std::size_t>(it - edges.begin()) - 1].count;
  }
  return buckets;
}

std::optional<double> StatsReport::resolved_pct() const {
  return percent(entities_resolved, entities_total);
}
std::optional<double> StatsReport::dated_pct() const {
  return percent(changes_dated, changes_total);
}
std::optional<double> StatsReport::dated_entities_pct() const {
  return percent(dated_entities, entities_total);
}
std::optional<double> StatsReport::mention_pct() const {
  return percent(mentions_found, changes_dated);
}
std::optional<double> StatsReport::under_10_pct() const {
  return percent(under_10_count, mentions_found);
}
std::optional<double> StatsReport::under_3_of_under_10_pct() const {
  return percent(under_3_count, under_10_count);
}
std::optional<double> StatsReport::under_3_pct() const {
  return percent(under_3_count, mentions_found);
}

StatsReport aggregate(std::span<const chains::EntityChain> chain_list,
                      std::span<const resolve::ResolvedEntity> resolved,
                      std::span<const ScanRecord> scans,
                      std::span<const std::int64_t> edges) {
  if (chain_list.empty()) throw Error(ErrorCode::kEmptyInput, "no chains");
  std::set<std::string> resolved_ids;
  for (const auto& entity : resolved) {
    if (entity.resolved()) resolved_ids.insert(entity.chain.id);
  }

  StatsReport report;
  report.entities_total = static_cast<std::int64_t>(chain_list.size());
  for (const auto& chain : chain_list) {
    const auto changes = static_cast<std::int64_t>(chain.changes.size());
    const auto dated = std::count_if(chain.changes.begin(), chain.changes.end(),
                                     [](const auto& c) { return c.date.has_value(); });
    report.changes_total += changes;
    report.changes_dated += dated;
    if (dated > 0) ++report.dated_entities;
    if (!resolved_ids.count(chain.id)) continue;
    ++report.entities_resolved;
    report.changes_of_resolved += changes;
  }

  std::vector<int> distances;
  for (const auto& record : scans) {
    if (record.scan.distance) distances.push_back(*record.scan.distance);
  }
  std::sort(distances.begin(), distances.end());
  report.mentions_found = static_cast<std::int64_t>(distances.size());
  for (const int d : distances) {
    report.distance_sum += d;
    if (d < 10) ++report.under_10_count;
    if (d < 3) ++report.under_3_count;
  }
  if (!distances.empty()) {
    report.distance_mean =
        static_cast<double>(report.distance_sum) / static_cast<double>(distances.size());
    report.distance_median = distances[(distances.size() - 1) / 2];
  }
  report.histogram = histogram(distances, edges);
  return report;
}

std::string format_percent(std::int64_t num, std::int64_t den) {
  if (den == 0) return "n/a";
  return one_decimal(100 * num, den) + "%";
}

std::string render_report(const StatsReport& r, ReportFormat format) {
  if (format == ReportFormat::kText) {
    std::string out;
    out += "entities: " + std::to_string(r.entities_total) + "\n";
    out += ratio_line("entities resolved", r.entities_resolved, r.entities_total);
    out += "changes: " + std::to_string(r.changes_total) + "\n";
    out += "changes of resolved entities: " + std::to_string(r.changes_of_resolved) + "\n";
    out += ratio_line("changes dated", r.changes_dated, r.changes_total);
    out += ratio_line("entities with dated changes", r.dated_entities, r.entities_total);
    out += ratio_line("mentions", r.mentions_found, r.changes_dated);
    out += "mean: " +
           (r.mentions_found ? one_decimal(r.distance_sum, r.mentions_found) : "n/a") + "\n";
    out += "median: " +
           (r.distance_median ? std::to_string(static_cast<long long>(*r.distance_median))
                              : std::string("n/a")) +
           "\n";
    out += ratio_line("distance < 10", r.under_10_count, r.mentions_found);
    out += ratio_line("distance < 3 of distance < 10", r.under_3_count, r.under_10_count);
    out += ratio_line("distance < 3 of all mentions", r.under_3_count, r.mentions_found);
    out += "histogram:\n";
    for (const auto& b : r.histogram) {
      out += "  [" + edge_text(b.lo) + ", " + edge_text(b.hi) + "): " + std::to_string(b.count) +
             "\n";
    }
    return out;
  }

  ordered_json j;
  j["entities_total"] = r.entities_total;
  j["entities_resolved"] = r.entities_resolved;
  j["resolved_pct"] = optional_json(r.resolved_pct());
  j["changes_total"] = r.changes_total;
  j["changes_of_resolved"] = r.changes_of_resolved;
  j["changes_dated"] = r.changes_dated;
  j["dated_pct"] = optional_json(r.dated_pct());
  j["dated_entities"] = r.dated_entities;
  j["dated_entities_pct"] = optional_json(r.dated_entities_pct());
  j["mentions_found"] = r.mentions_found;
  j["mention_pct"] = optional_json(r.mention_pct());
  j["distance_sum"] = r.distance_sum;
  j["distance_mean"] = optional_json(r.distance_mean);
  j["distance_median"] = optional_json(r.distance_median);
  j["under_10_count"] = r.under_10_count;
  j["under_10_pct"] = optional_json(r.under_10_pct());
  j["under_3_count"] = r.under_3_count;
  j["under_3_of_under_10_pct"] = optional_json(r.under_3_of_under_10_pct());
  j["under_3_pct"] = optional_json(r.under_3_pct());
  j["histogram"] = ordered_json::array();
  for (const auto& b : r.histogram) {
    j["histogram"].push_back(
        {{"lo", b.lo}, {"hi", b.hi == kOpenEnd ? ordered_json(nullptr) : ordered_json(b.hi)},
         {"count", b.count}});
  }
  return j.dump(2) + "\n";
}

StatsReport parse_structured_report(std::string_view text) {
  const auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error(ErrorCode::kBadFormat, "report is not JSON");
  try {
    StatsReport r;
    r.entities_total = j.at("entities_total").get<std::int64_t>();
    r.entities_resolved = j.at("entities_resolved").get<std::int64_t>();
    r.changes_total = j.at("changes_total").get<std::int64_t>();
    r.changes_of_resolved = j.at("changes_of_resolved").get<std::int64_t>();
    r.changes_dated = j.at("changes_dated").get<std::int64_t>();
    r.dated_entities = j.at("dated_entities").get<std::int64_t>();
    r.mentions_found = j.at("mentions_found").get<std::int64_t>();
    r.distance_sum = j.at("distance_sum").get<std::int64_t>();
    r.distance_mean = optional_double(j, "distance_mean");
    r.distance_median = optional_double(j, "distance_median");
    r.under_10_count = j.at("under_10_count").get<std::int64_t>();
    r.under_3_count = j.at("under_3_count").get<std::int64_t>();
    for (const auto& b : j.at("histogram")) {
      r.histogram.push_back({b.at("lo").get<std::int64_t>(),
                             b.at("hi").is_null() ? kOpenEnd : b.at("hi").get<std::int64_t>(),
                             b.at("count").get<std::int64_t>()});
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kBadFormat, e.what());
  }
}

std::vector<EvolutionRecord> export_kb(std::span<const ScanRecord> scans,
                                       const std::string& snapshot_id) {
  std::vector<EvolutionRecord> records;
  for (const auto& record : scans) {
    const auto& scan = record.scan;
    if (!scan.distance || !scan.change.date || !record.excerpt) continue;
    records.push_back({record.entity_id, scan.change.preceding, scan.change.succeeding,
                       *scan.change.date, scan.article.title, *scan.distance,
                       record.excerpt->text, record.excerpt->signal_words,
                       scan.change.source_list, snapshot_id});
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const EvolutionRecord& a, const EvolutionRecord& b) {
                     if (a.entity_id != b.entity_id) return a.entity_id < b.entity_id;
                     if (auto c = chains::compare_dates(a.date, b.date); c != 0) return c < 0;
                     if (a.preceding != b.preceding) return a.preceding < b.preceding;
                     return a.succeeding < b.succeeding;
                   });
  return records;
}

std::string render_kb(std::span<const EvolutionRecord> records) {
  std::string out;
  for (const auto& r : records) {
    ordered_json date;
    date["year"] = r.date.year;
    if (r.date.month) date["month"] = *r.date.month;
    if (r.date.day) date["day"] = *r.date.day;
    date["approximate"] = r.date.approximate;
    ordered_json j;
    j["entity_id"] = r.entity_id;
    j["preceding"] = r.preceding;
    j["succeeding"] = r.succeeding;
    j["date"] = date;
    j["article_title"] = r.article_title;
    j["distance"] = r.distance;
    j["excerpt"] = r.excerpt;
    j["signal_words"] = r.signal_words;
    j["source_list"] = r.source_list;
    j["snapshot_id"] = r.snapshot_id;
    out += j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
  }
  return out;
}

}  // namespace nevo::stats
