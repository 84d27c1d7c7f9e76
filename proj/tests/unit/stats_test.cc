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

#include <doctest.h>

#include "fake_wiki.h"
#include "nevo/error.h"
#include "nevo/stats.h"

namespace nevo::stats {
namespace {

ScanRecord scan(const std::string& entity, const std::string& a, const std::string& b, int year,
                std::optional<int> d) {
  ScanRecord r;
  r.entity_id = entity;
  r.scan.change = {a, b, chains::PartialDate{year}, "L", 0};
  r.scan.article = {b, 1, b, {}, {}};
  if (d) {
    r.scan.distance = d;
    r.scan.window = textscan::Window{0, *d};
    r.excerpt = textscan::Excerpt{{0, *d}, a + " became " + b + ".", {"became"}};
  }
  return r;
}

StatsReport report_of(std::vector<int> distances) {
  chains::EntityChain chain;
  chain.names = {"A", "B"};
  chain.id = "e";
  resolve::ResolvedEntity entity{chain, {{"B", 1, "B", {}, {}}}, {}};
  std::vector<ScanRecord> scans;
  for (int d : distances) scans.push_back(scan("e", "A", "B", 1900, d));
  chain.changes.assign(distances.size(), {"A", "B", chains::PartialDate{1900}, "L", 0});
  entity.chain = chain;
  return aggregate(std::vector{chain}, std::vector{entity}, scans, default_edges());
}

TEST_CASE("mean and lower median") {
  const auto r = report_of({0, 1, 5});
  CHECK(r.distance_mean == doctest::Approx(2.0));
  CHECK(r.distance_median == 1);
  CHECK(report_of({0, 1, 5, 7}).distance_median == 1);
}

TEST_CASE("zero mentions") {
  chains::EntityChain chain{"e", {"A", "B"}, {{"A", "B", chains::PartialDate{1900}, "L", 0}}, {}};
  resolve::ResolvedEntity entity{chain, {{"B", 1, "B", {}, {}}}, {}};
  const std::vector<ScanRecord> scans = {scan("e", "A", "B", 1900, std::nullopt)};
  const auto r = aggregate(std::vector{chain}, std::vector{entity}, scans, default_edges());
  CHECK_FALSE(r.distance_mean.has_value());
  CHECK_FALSE(r.distance_median.has_value());
  for (const auto& b : r.histogram) CHECK(b.count == 0);
  const auto text = render_report(r, ReportFormat::kText);
  CHECK(text.find("mean: n/a\n") != std::string::npos);
  CHECK(text.find("median: n/a\n") != std::string::npos);
  CHECK(text.find("distance < 10: 0/0 (n/a)\n") != std::string::npos);
}

TEST_CASE("empty input is rejected") {
  CHECK_THROWS_AS(aggregate({}, {}, {}, default_edges()), Error);
}

TEST_CASE("histogram binning") {
  const std::vector<int> d = {0, 1, 5};
  const std::vector<std::int64_t> e = {0, 1, 3, 10};
  CHECK(histogram(d, e) == std::vector<Bucket>{{0, 1, 1}, {1, 3, 1}, {3, 10, 1}});
  const auto empty = histogram({}, e);
  for (const auto& b : empty) CHECK(b.count == 0);
  const std::vector<int> twos = {2, 2, 2};
  const std::vector<std::int64_t> one = {0, 3};
  CHECK(histogram(twos, one) == std::vector<Bucket>{{0, 3, 3}});
  const std::vector<int> far = {12};
  CHECK_THROWS_AS(histogram(far, e), Error);
  const std::vector<std::int64_t> bad = {3, 1};
  CHECK_THROWS_AS(histogram(d, bad), Error);
}

TEST_CASE("edge parsing") {
  CHECK(parse_edges("0,1,3,10,50,inf") == default_edges());
  CHECK(parse_edges(" 0, 5 ,inf") == std::vector<std::int64_t>{0, 5, kOpenEnd});
  CHECK_THROWS_AS(parse_edges("0,x"), Error);
  CHECK_THROWS_AS(parse_edges(""), Error);
}

TEST_CASE("percent formatting") {
  CHECK(format_percent(572, 918) == "62.3%");
  CHECK(format_percent(5, 7) == "71.4%");
  CHECK(format_percent(1, 8) == "12.5%");
  CHECK(format_percent(1, 16) == "6.3%");
  CHECK(format_percent(4, 4) == "100.0%");
  CHECK(format_percent(0, 0) == "n/a");
}

TEST_CASE("mention line shape") {
  StatsReport r;
  r.entities_total = 1;
  r.changes_dated = 918;
  r.mentions_found = 572;
  CHECK(render_report(r, ReportFormat::kText).find("mentions: 572/918 (62.3%)\n") !=
        std::string::npos);
}

TEST_CASE("structured report round-trips") {
  const auto r = report_of({0, 3, 12, 70});
  CHECK(parse_structured_report(render_report(r, ReportFormat::kStructured)) == r);
  CHECK_THROWS_AS(parse_structured_report("{"), Error);
}

TEST_CASE("knowledge base export") {
  const std::vector<ScanRecord> scans = {
      scan("b", "X", "Y", 1950, 1), scan("a", "Q", "R", 1930, 0),
      scan("a", "P", "Q", 1900, 2), scan("a", "R", "S", 1940, std::nullopt)};
  const auto kb = export_kb(scans, "snap");
  REQUIRE(kb.size() == 3);
  CHECK(kb[0].entity_id == "a");
  CHECK(kb[0].date.year == 1900);
  CHECK(kb[1].date.year == 1930);
  CHECK(kb[2].entity_id == "b");
  CHECK(kb[0].snapshot_id == "snap");
  CHECK(render_kb(kb).rfind(R"({"entity_id":"a","preceding":"P","succeeding":"Q")", 0) == 0);
  CHECK(export_kb({}, "snap").empty());
  CHECK(render_kb({}).empty());
}

}  // namespace
}  // namespace nevo::stats
