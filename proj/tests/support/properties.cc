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

#include "properties.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "fake_wiki.h"
#include "nevo/chains.h"
#include "nevo/corpus.h"
#include "nevo/error.h"
#include "nevo/resolve.h"
#include "nevo/stats.h"
#include "nevo/wikitext.h"

namespace nevo::testing {
namespace {

using Rng = std::mt19937_64;

constexpr double kPercentTolerance = 1e-9;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(items.size()) - 1))];
}

std::vector<int> random_set(Rng& rng, int max_size, int max_index) {
  std::set<int> values;
  const int size = uniform(rng, 0, max_size);
  while (static_cast<int>(values.size()) < size) values.insert(uniform(rng, 0, max_index));
  return {values.begin(), values.end()};
}

std::string show(const std::vector<int>& v) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << "}";
  return out.str();
}

std::string show(const std::optional<textscan::Coverage>& c) {
  if (!c) return "absent";
  return std::to_string(c->distance) + " (" + std::to_string(c->window.first) + "," +
         std::to_string(c->window.last) + ")";
}

textscan::OccurrenceSet occurrences(textscan::Component component, std::vector<int> indices) {
  return {component, std::move(indices)};
}

std::optional<textscan::Coverage> library_distance(const std::vector<int>& a,
                                                   const std::vector<int>& b,
                                                   const std::vector<int>& c) {
  return textscan::min_sentence_distance(occurrences(textscan::Component::kPreceding, a),
                                         occurrences(textscan::Component::kSucceeding, b),
                                         occurrences(textscan::Component::kDate, c));
}

class Recorder {
 public:
  explicit Recorder(std::string name) { outcome_.name = std::move(name); }
  void pass() { ++outcome_.cases; }
  void fail(const std::string& why) {
    ++outcome_.cases;
    if (outcome_.failures++ == 0) outcome_.first_failure = why;
  }
  void check(bool ok, const std::string& why) { ok ? pass() : fail(why); }
  PropertyOutcome done() { return outcome_; }

 private:
  PropertyOutcome outcome_;
};

const std::vector<std::string> kNames = {
    "Edo",          "Tokyo",          "Danzig",      "Gdańsk",       "Łódź",
    "Saigon",       "Ho Chi Minh City", "Byzantium", "Constantinople", "Istanbul",
    "Christiania",  "Kristiania",     "Oslo",        "Bombay",       "Mumbai",
    "Tokyo (city)", "Georgia (country)", "St. Petersburg", "Petrograd", "Leningrad",
    "Königsberg",   "Kaliningrad",    "Zaïre",       "New Amsterdam", "New York"};

const std::vector<std::string> kArrows = {"→", "->", "⇒"};

chains::PartialDate random_date(Rng& rng) {
  chains::PartialDate date;
  do {
    date.year = chance(rng, 0.15) ? -uniform(rng, 1, 800) : uniform(rng, 1, 2024);
  } while (date.year == 0);
  if (chance(rng, 0.4)) {
    date.month = uniform(rng, 1, 12);
    if (chance(rng, 0.5)) date.day = uniform(rng, 1, 28);
  }
  date.approximate = chance(rng, 0.2);
  return date;
}

struct GeneratedChain {
  std::string item;
  std::vector<std::string> names;
  std::vector<std::optional<chains::PartialDate>> dates;
};

GeneratedChain random_chain(Rng& rng, const std::vector<std::string>& pool, int max_names) {
  GeneratedChain g;
  const int length = uniform(rng, 2, max_names);
  while (static_cast<int>(g.names.size()) < length) {
    const std::string& name = pick(rng, pool);
    if (!g.names.empty() && g.names.back() == name) continue;
    g.names.push_back(name);
  }
  for (int i = 0; i < length; ++i) {
    if (i > 0) {
      g.item += chance(rng, 0.2) ? "  " : " ";
      g.item += pick(rng, kArrows);
      g.item += chance(rng, 0.2) ? "  " : " ";
    }
    g.item += g.names[static_cast<std::size_t>(i)];
    if (i > 0) {
      std::optional<chains::PartialDate> date;
      if (chance(rng, 0.6)) {
        date = random_date(rng);
        g.item += " (" + chains::format_date(*date) + ")";
      }
      g.dates.push_back(date);
    }
  }
  return g;
}

std::string describe(const chains::EntityChain& chain) { return chains::format_chain(chain); }

bool same_shape(const chains::EntityChain& chain, const GeneratedChain& g) {
  if (chain.names != g.names || chain.changes.size() != g.dates.size()) return false;
  for (std::size_t i = 0; i < g.dates.size(); ++i) {
    const auto& change = chain.changes[i];
    if (change.preceding != g.names[i] || change.succeeding != g.names[i + 1]) return false;
    if (change.date != g.dates[i]) return false;
  }
  return true;
}

bool is_ascii_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

}  // namespace

std::optional<textscan::Coverage> brute_force_distance(const std::vector<int>& a,
                                                       const std::vector<int>& b,
                                                       const std::vector<int>& c) {
  std::optional<textscan::Coverage> best;
  for (int x : a) {
    for (int y : b) {
      for (int z : c) {
        const int lo = std::min({x, y, z});
        const int hi = std::max({x, y, z});
        if (!best || hi - lo < best->distance ||
            (hi - lo == best->distance && lo < best->window.first)) {
          best = textscan::Coverage{hi - lo, {lo, hi}};
        }
      }
    }
  }
  return best;
}

std::string oracle_percent(std::int64_t num, std::int64_t den) {
  if (den == 0) return "n/a";
  const std::int64_t hundredths = num * 10000 / den;
  std::int64_t tenths = hundredths / 10;
  if (hundredths % 10 >= 5) ++tenths;
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10) + "%";
}

PropertyOutcome check_distance_oracle(std::uint64_t seed, int cases) {
  Rng rng(seed);
  Recorder r("distance oracle equivalence");
  for (int i = 0; i < cases; ++i) {
    const auto a = random_set(rng, 20, 499);
    const auto b = random_set(rng, 20, 499);
    const auto c = random_set(rng, 20, 499);
    const auto expected = brute_force_distance(a, b, c);
    const auto actual = library_distance(a, b, c);
    r.check(expected == actual, show(a) + " " + show(b) + " " + show(c) + ": expected " +
                                    show(expected) + ", got " + show(actual));
  }
  return r.done();
}

PropertyOutcome check_distance_zero(std::uint64_t seed, int cases) {
  Rng rng(seed);
  Recorder r("distance-0 rule");
  for (int i = 0; i < cases; ++i) {
    const int shared = uniform(rng, 0, 499);
    std::array<std::vector<int>, 3> sets;
    for (auto& set : sets) {
      set = random_set(rng, 19, 499);
      if (!std::binary_search(set.begin(), set.end(), shared)) {
        set.insert(std::lower_bound(set.begin(), set.end(), shared), shared);
      }
    }
    const auto actual = library_distance(sets[0], sets[1], sets[2]);
    const bool ok = actual && actual->distance == 0 &&
                    actual->window.first == actual->window.last &&
                    actual->window.first <= shared;
    r.check(ok, "shared " + std::to_string(shared) + ": got " + show(actual));
  }
  return r.done();
}

PropertyOutcome check_distance_symmetry(std::uint64_t seed, int cases) {
  Rng rng(seed);
  Recorder r("distance symmetry");
  for (int i = 0; i < cases; ++i) {
    std::array<std::vector<int>, 3> s = {random_set(rng, 12, 200), random_set(rng, 12, 200),
                                         random_set(rng, 12, 200)};
    const auto base = library_distance(s[0], s[1], s[2]);
    std::array<int, 3> order = {0, 1, 2};
    bool ok = true;
    while (std::next_permutation(order.begin(), order.end())) {
      ok = ok && library_distance(s[static_cast<std::size_t>(order[0])],
                                  s[static_cast<std::size_t>(order[1])],
                                  s[static_cast<std::size_t>(order[2])]) == base;
    }
    r.check(ok, show(s[0]) + " " + show(s[1]) + " " + show(s[2]));
  }
  return r.done();
}

PropertyOutcome check_distance_monotonicity(std::uint64_t seed, int cases) {
  Rng rng(seed);
  Recorder r("distance monotonicity");
  for (int i = 0; i < cases; ++i) {
    std::array<std::vector<int>, 3> s = {random_set(rng, 10, 200), random_set(rng, 10, 200),
                                         random_set(rng, 10, 200)};
    const auto before = library_distance(s[0], s[1], s[2]);
    auto& grown = s[static_cast<std::size_t>(uniform(rng, 0, 2))];
    const int extra = uniform(rng, 0, 200);
    if (!std::binary_search(grown.begin(), grown.end(), extra)) {
      grown.insert(std::lower_bound(grown.begin(), grown.end(), extra), extra);
    }
    const auto after = library_distance(s[0], s[1], s[2]);
    const bool ok = after.has_value() == (!s[0].empty() && !s[1].empty() && !s[2].empty()) &&
                    (!before || (after && after->distance <= before->distance));
    r.check(ok, "adding " + std::to_string(extra) + ": " + show(before) + " -> " + show(after));
  }
  return r.done();
}

PropertyOutcome check_chain_round_trip(std::uint64_t seed, int cases) {
  Rng rng(seed);
  Recorder r("chain round trip");
  for (int i = 0; i < cases; ++i) {
    const GeneratedChain g = random_chain(rng, kNames, 5);
    try {
      const auto chain = chains::parse_chain_item(g.item, "L", i);
      const auto again = chains::parse_chain_item(chains::format_chain(chain), "L", i);
      const bool ok = same_shape(chain, g) && same_shape(again, g) && again.id == chain.id &&
                      chain.id == chains::chain_id(g.names);
      r.check(ok, "'" + g.item + "' parsed as '" + describe(chain) + "'");
    } catch (const Error& e) {
      r.fail("'" + g.item + "' threw " + e.what());
    }
  }
  return r.done();
}

PropertyOutcome check_chain_length_law(std::uint64_t seed, int cases) {
  Rng rng(seed);
  Recorder r("chain length law");
  for (int i = 0; i < cases; ++i) {
    const int segments = uniform(rng, 0, 6);
    std::string item;
    std::vector<std::string> names;
    for (int k = 0; k < segments; ++k) {
      std::string name = pick(rng, kNames);
      if (!names.empty() && names.back() == name) name = "Neo " + name;
      names.push_back(name);
      if (k > 0) item += " " + pick(rng, kArrows) + " ";
      item += name;
    }
    if (segments == 0) item = pick(rng, kNames);
    try {
      const auto chain = chains::parse_chain_item(item);
      r.check(segments >= 2 && chain.names.size() == static_cast<std::size_t>(segments) &&
                  chain.changes.size() + 1 == chain.names.size(),
              "'" + item + "' gave " + std::to_string(chain.changes.size()) + " changes");
    } catch (const Error& e) {
      r.check(segments < 2 && e.code() == ErrorCode::kNotAChain,
              "'" + item + "' threw " + e.what());
    }
  }
  return r.done();
}

PropertyOutcome check_dedup_idempotence(std::uint64_t seed, int cases) {
  Rng rng(seed);
  Recorder r("dedup idempotence");
  const std::vector<std::string> pool(kNames.begin(), kNames.begin() + 5);
  for (int i = 0; i < cases; ++i) {
    std::vector<chains::EntityChain> input;
    const int count = uniform(rng, 0, 8);
    for (int k = 0; k < count; ++k) {
      const auto g = random_chain(rng, pool, 3);
      input.push_back(chains::parse_chain_item(g.item, "L" + std::to_string(uniform(rng, 1, 3)),
                                               k));
    }
    const auto once = chains::dedup_chains(input);
    const auto twice = chains::dedup_chains(once.chains);
    std::set<std::string> ids;
    for (const auto& c : input) ids.insert(c.id);
    bool ok = twice.merged == 0 && twice.conflicts.empty() &&
              twice.chains.size() == once.chains.size() && once.chains.size() == ids.size() &&
              once.merged == count - static_cast<int>(ids.size());
    for (std::size_t k = 0; ok && k < once.chains.size(); ++k) {
      const auto& a = once.chains[k];
      const auto& b = twice.chains[k];
      ok = a.id == b.id && a.names == b.names && a.sources == b.sources &&
           a.changes.size() == b.changes.size();
      for (std::size_t c = 0; ok && c < a.changes.size(); ++c) {
        ok = a.changes[c].date == b.changes[c].date;
      }
    }
    r.check(ok, "dedup of " + std::to_string(count) + " chains is not idempotent");
  }
  return r.done();
}

PropertyOutcome check_date_round_trip(std::uint64_t seed, int cases) {
  Rng rng(seed);
  Recorder r("date round trip");
  for (int i = 0; i < cases; ++i) {
    const auto date = random_date(rng);
    const std::string text = chains::format_date(date);
    try {
      r.check(chains::parse_date(text) == date, "'" + text + "' did not round-trip");
    } catch (const Error& e) {
      r.fail("'" + text + "' threw " + e.what());
    }
  }
  return r.done();
}

PropertyOutcome check_segmentation_partition(std::uint64_t seed, int cases) {
  Rng rng(seed);
  Recorder r("segmentation partition");
  const std::vector<std::string> tokens = {
      "the", "city", "Tokyo", "was", "renamed", "Dr.", "St.", "c.", "in", "1868", "It",
      "(", ")", "\"", "Gdańsk", "e.g.", "A.", "no.", "vol.", "ÉCOLE", "über", "i.e."};
  const std::vector<std::string> separators = {" ", " ", " ", "  ", "\t", ". ", "! ",
                                               "? ", "...", ".\n", "\n", "\n\n", "?!", ". "};
  for (int i = 0; i < cases; ++i) {
    std::string text;
    const int length = uniform(rng, 0, 40);
    for (int k = 0; k < length; ++k) {
      text += chance(rng, 0.6) ? pick(rng, tokens) : pick(rng, separators);
    }
    const auto spans = textscan::segment_sentences(text);
    std::vector<int> cover(text.size(), 0);
    bool ok = true;
    std::size_t previous_end = 0;
    for (const auto& span : spans) {
      ok = ok && span.begin < span.end && span.end <= text.size() &&
           span.begin >= previous_end && !is_ascii_space(text[span.begin]) &&
           !is_ascii_space(text[span.end - 1]) &&
           text.substr(span.begin, span.end - span.begin).find('\n') == std::string::npos;
      if (!ok) break;
      previous_end = span.end;
      for (std::size_t p = span.begin; p < span.end; ++p) ++cover[p];
    }
    for (std::size_t p = 0; ok && p < text.size(); ++p) {
      ok = cover[p] == (is_ascii_space(text[p]) ? cover[p] : 1);
    }
    r.check(ok, "segmentation of '" + text + "' is not a partition");
  }
  return r.done();
}

PropertyOutcome check_strip_fixpoint(std::uint64_t seed, int cases) {
  Rng rng(seed);
  Recorder r("markup stripping fixpoint");
  const std::vector<std::string> fragments = {
      "[[", "]]", "{{", "}}", "|", "<ref>", "</ref>", "<ref name=a/>", "'''", "''", "<!--",
      "-->", "==", "\n", "\n* ", "\n# ", "&amp;", "&nbsp;", "&#x41;", "<br/>", "\n{|", "\n|}",
      "[http://example.org site]", "Tokyo", " was ", "renamed", "[[File:x.png|thumb|cap]]",
      "[[Edo|old name]]", "{{cn}}", "__NOTOC__", "<nowiki>", "</nowiki>", "<div>", "</div>",
      "[[Category:Cities]]", "<math>x</math>", "Gdańsk", " 1868. ", "<", ">", "&"};
  for (int i = 0; i < cases; ++i) {
    std::string markup;
    const int length = uniform(rng, 0, 30);
    for (int k = 0; k < length; ++k) markup += pick(rng, fragments);
    wikitext::RawPage page{"Fuzz", std::nullopt, markup, ""};
    const auto once = wikitext::strip_markup(page);
    page.wikitext = once.text.text;
    const auto twice = wikitext::strip_markup(page);
    bool clean = true;
    for (const char* token : {"[[", "]]", "{{", "}}", "<!--"}) {
      clean = clean && once.text.text.find(token) == std::string::npos;
    }
    r.check(clean && twice.text.text == once.text.text,
            "'" + markup + "' -> '" + once.text.text + "' -> '" + twice.text.text + "'");
  }
  return r.done();
}

PropertyOutcome check_resolve_partition(std::uint64_t seed, int cases) {
  Rng rng(seed);
  Recorder r("resolution partition");
  const std::vector<std::string> titles = {"Alpha", "Beta",  "Gamma", "Delta", "Epsilon",
                                           "Zeta",  "Eta",   "Theta", "Iota",  "Kappa"};
  const int stores = std::max(1, std::min(20, cases / 50));
  const int per_store = cases / stores;
  for (int s = 0; s < stores; ++s) {
    TempDir dir;
    StoreLayout layout;
    std::set<std::string> used;
    for (const auto& title : titles) {
      const int kind = uniform(rng, 0, 9);
      if (kind < 4) {
        layout.pages[title] = title + " is a place.";
        layout.page_ids[title] = uniform(rng, 1, 6);  // collisions force page-id dedup
      } else if (kind < 5) {
        layout.pages[title] = "'''" + title + "''' may refer to:\n* [[Alpha]]\n{{disambiguation}}";
      } else if (kind < 8) {
        layout.redirects.emplace_back(title, pick(rng, titles));
      }
    }
    write_store(dir.path(), layout);
    auto store = corpus::SnapshotStore::open_offline(dir.path());
    for (int i = 0; i < per_store; ++i) {
      chains::EntityChain chain;
      const int length = uniform(rng, 2, 5);
      for (int k = 0; k < length; ++k) chain.names.push_back(pick(rng, titles));
      for (int k = 1; k < length; ++k) {
        chain.changes.push_back({chain.names[static_cast<std::size_t>(k - 1)],
                                 chain.names[static_cast<std::size_t>(k)], std::nullopt, "L", 0});
      }
      chain.id = chains::chain_id(chain.names);
      const auto entity = resolve::resolve_entity(chain, *store);
      const auto repeat = resolve::resolve_entity(chain, *store);
      std::multiset<std::string> seen;
      std::set<std::int64_t> ids;
      for (const auto& a : entity.articles) {
        seen.insert(a.resolved_from);
        seen.insert(a.also_resolved_from.begin(), a.also_resolved_from.end());
        ids.insert(a.page_id);
      }
      for (const auto& u : entity.unresolved) seen.insert(u.name);
      const std::set<std::string> distinct(chain.names.begin(), chain.names.end());
      const bool ok = seen == std::multiset<std::string>(distinct.begin(), distinct.end()) &&
                      ids.size() == entity.articles.size() &&
                      repeat.articles.size() == entity.articles.size() &&
                      repeat.unresolved.size() == entity.unresolved.size();
      r.check(ok, "partition broken for " + chains::format_chain(chain));
    }
  }
  return r.done();
}

namespace {

struct SyntheticCorpus {
  std::vector<chains::EntityChain> chains;
  std::vector<resolve::ResolvedEntity> resolved;
  std::vector<stats::ScanRecord> scans;
  std::vector<int> distances;
  std::int64_t changes = 0, changes_of_resolved = 0, dated = 0, dated_entities = 0,
               resolved_entities = 0;
};

SyntheticCorpus synthetic_corpus(Rng& rng) {
  SyntheticCorpus c;
  const int entities = uniform(rng, 1, 12);
  for (int e = 0; e < entities; ++e) {
    chains::EntityChain chain;
    const int changes = uniform(rng, 1, 4);
    for (int k = 0; k <= changes; ++k) chain.names.push_back("N" + std::to_string(e * 10 + k));
    chain.id = chains::chain_id(chain.names);
    const bool resolved = chance(rng, 0.7);
    bool any_dated = false;
    for (int k = 0; k < changes; ++k) {
      chains::NameChange change{chain.names[static_cast<std::size_t>(k)],
                                chain.names[static_cast<std::size_t>(k + 1)], std::nullopt, "L",
                                e};
      if (chance(rng, 0.5)) change.date = chains::PartialDate{uniform(rng, 1000, 2000)};
      chain.changes.push_back(change);
      ++c.changes;
      if (resolved) ++c.changes_of_resolved;
      if (change.date) {
        any_dated = true;
        ++c.dated;
      }
      if (change.date && resolved) {
        stats::ScanRecord record;
        record.entity_id = chain.id;
        record.scan.change = change;
        if (chance(rng, 0.6)) {
          const int d = chance(rng, 0.5) ? uniform(rng, 0, 4) : uniform(rng, 0, 120);
          record.scan.distance = d;
          record.scan.window = textscan::Window{0, d};
          c.distances.push_back(d);
        }
        c.scans.push_back(record);
      }
    }
    if (any_dated) ++c.dated_entities;
    resolve::ResolvedEntity entity;
    entity.chain = chain;
    if (resolved) {
      ++c.resolved_entities;
      entity.articles.push_back({chain.names.back(), e + 1, chain.names.back(), {}, {}});
    }
    c.chains.push_back(chain);
    c.resolved.push_back(entity);
  }
  return c;
}

}  // namespace

PropertyOutcome check_percentage_consistency(std::uint64_t seed, int cases) {
  Rng rng(seed);
  Recorder r("percentage consistency");
  const auto edges = stats::default_edges();
  for (int i = 0; i < cases; ++i) {
    const auto c = synthetic_corpus(rng);
    const auto report = stats::aggregate(c.chains, c.resolved, c.scans, edges);
    auto sorted = c.distances;
    std::sort(sorted.begin(), sorted.end());
    const std::int64_t n = static_cast<std::int64_t>(sorted.size());
    const std::int64_t sum = std::accumulate(sorted.begin(), sorted.end(), std::int64_t{0});
    const std::int64_t under_10 = std::count_if(sorted.begin(), sorted.end(),
                                                [](int d) { return d < 10; });
    const std::int64_t under_3 = std::count_if(sorted.begin(), sorted.end(),
                                               [](int d) { return d < 3; });
    std::int64_t histogram_total = 0;
    for (const auto& b : report.histogram) histogram_total += b.count;

    bool ok = report.entities_total == static_cast<std::int64_t>(c.chains.size()) &&
              report.entities_resolved == c.resolved_entities &&
              report.changes_total == c.changes &&
              report.changes_of_resolved == c.changes_of_resolved &&
              report.changes_dated == c.dated && report.dated_entities == c.dated_entities &&
              report.mentions_found == n && report.distance_sum == sum &&
              report.under_10_count == under_10 && report.under_3_count == under_3 &&
              histogram_total == n && report.under_3_count <= report.under_10_count &&
              report.under_10_count <= report.mentions_found &&
              report.mentions_found <= report.changes_dated &&
              report.changes_dated <= report.changes_total &&
              report.changes_of_resolved <= report.changes_total;
    if (n == 0) {
      ok = ok && !report.distance_mean && !report.distance_median;
    } else {
      ok = ok && report.distance_mean &&
           std::abs(*report.distance_mean - static_cast<double>(sum) / static_cast<double>(n)) <
               kPercentTolerance &&
           report.distance_median &&
           *report.distance_median == sorted[static_cast<std::size_t>((n - 1) / 2)];
    }
    const auto pct_matches = [](std::optional<double> pct, std::int64_t num, std::int64_t den) {
      if (den == 0) return !pct.has_value();
      return pct && std::abs(*pct - 100.0 * static_cast<double>(num) / static_cast<double>(den)) <
                        kPercentTolerance;
    };
    ok = ok && pct_matches(report.mention_pct(), n, c.dated) &&
         pct_matches(report.under_10_pct(), under_10, n) &&
         pct_matches(report.under_3_of_under_10_pct(), under_3, under_10) &&
         pct_matches(report.resolved_pct(), c.resolved_entities,
                     static_cast<std::int64_t>(c.chains.size()));

    const std::string text = stats::render_report(report, stats::ReportFormat::kText);
    ok = ok &&
         text.find("mentions: " + std::to_string(n) + "/" + std::to_string(c.dated) + " (" +
                   oracle_percent(n, c.dated) + ")") != std::string::npos &&
         text.find("distance < 10: " + std::to_string(under_10) + "/" + std::to_string(n) +
                   " (" + oracle_percent(under_10, n) + ")") != std::string::npos &&
         stats::format_percent(under_3, under_10) == oracle_percent(under_3, under_10);
    ok = ok && stats::parse_structured_report(stats::render_report(
                   report, stats::ReportFormat::kStructured)) == report;
    r.check(ok, "report inconsistent for " + std::to_string(c.chains.size()) + " entities, " +
                    std::to_string(n) + " mentions");
  }
  return r.done();
}

PropertyOutcome check_histogram_conservation(std::uint64_t seed, int cases) {
  Rng rng(seed);
  Recorder r("histogram conservation");
  for (int i = 0; i < cases; ++i) {
    std::set<std::int64_t> edge_set = {0};
    const int extra = uniform(rng, 0, 5);
    while (static_cast<int>(edge_set.size()) < extra + 1) edge_set.insert(uniform(rng, 1, 60));
    std::vector<std::int64_t> edges(edge_set.begin(), edge_set.end());
    edges.push_back(stats::kOpenEnd);
    std::vector<int> distances;
    const int count = uniform(rng, 0, 40);
    for (int k = 0; k < count; ++k) distances.push_back(uniform(rng, 0, 100));
    const auto buckets = stats::histogram(distances, edges);
    bool ok = buckets.size() + 1 == edges.size();
    std::int64_t total = 0;
    for (std::size_t b = 0; ok && b < buckets.size(); ++b) {
      const auto expected = std::count_if(distances.begin(), distances.end(), [&](int d) {
        return d >= edges[b] && d < edges[b + 1];
      });
      ok = buckets[b].lo == edges[b] && buckets[b].hi == edges[b + 1] &&
           buckets[b].count == expected;
      total += buckets[b].count;
    }
    r.check(ok && total == count, "histogram of " + std::to_string(count) + " distances");
  }
  return r.done();
}

std::vector<PropertyOutcome> run_invariant_suites(std::uint64_t seed, int cases) {
  return {
      check_distance_symmetry(seed + 1, cases),
      check_distance_monotonicity(seed + 2, cases),
      check_chain_round_trip(seed + 3, cases),
      check_chain_length_law(seed + 4, cases),
      check_dedup_idempotence(seed + 5, cases),
      check_date_round_trip(seed + 6, cases),
      check_segmentation_partition(seed + 7, cases),
      check_strip_fixpoint(seed + 8, cases),
      check_resolve_partition(seed + 9, cases),
      check_percentage_consistency(seed + 10, cases),
      check_histogram_conservation(seed + 11, cases),
  };
}

}  // namespace nevo::testing
