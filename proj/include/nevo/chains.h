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

#ifndef NEVO_CHAINS_H_
#define NEVO_CHAINS_H_

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nevo::chains {

// A date of year, month or day granularity. Negative years are BCE.
struct PartialDate {
  int year = 0;
  std::optional<int> month;
  std::optional<int> day;
  bool approximate = false;

  friend bool operator==(const PartialDate&, const PartialDate&) = default;
};

// Orders by (year, month, day); absent components sort first.
std::strong_ordering compare_dates(const PartialDate& a, const PartialDate& b);

// "1868", "May 1975", "1 May 1975", "c. 330", "330 BC".
std::string format_date(const PartialDate& date);

// Accepted shapes, tried in order: "DD Month YYYY", "Month DD, YYYY",
// "Month YYYY", "YYYY". A leading "c." or "ca." marks the date approximate;
// a trailing "BC"/"BCE" negates the year. Throws Error(kUnparseableDate).
PartialDate parse_date(std::string_view text);

struct NameChange {
  std::string preceding;
  std::string succeeding;
  std::optional<PartialDate> date;
  std::string source_list;
  int item_index = 0;
};

struct EntityChain {
  std::string id;
  std::vector<std::string> names;
  std::vector<NameChange> changes;
  std::vector<std::string> sources;  // every list the chain was found on
};

// Hash of the normalized name sequence.
std::string chain_id(const std::vector<std::string>& names);

// Parses "A → B (d1) → C (d2)". Arrows: "→", "->", "⇒". A trailing
// parenthetical that parses as a date belongs to the change ending at that
// name; any other parenthetical stays part of the name. Throws
// Error(kNotAChain) or Error(kEmptySegment).
EntityChain parse_chain_item(std::string_view item, std::string_view source_list = {},
                             int item_index = 0);

// Inverse of parse_chain_item for chains it produced.
std::string format_chain(const EntityChain& chain);

struct DateConflict {
  std::string chain_id;
  std::string preceding;
  std::string succeeding;
  PartialDate kept;
  PartialDate dropped;
  std::string dropped_source;
};

struct DedupResult {
  std::vector<EntityChain> chains;
  std::vector<DateConflict> conflicts;
  int merged = 0;  // number of input chains folded into an earlier one
};

// Chains with identical normalized name sequences are merged: dated changes
// win over undated ones, the first-seen date wins a conflict, provenance is
// the union of sources. Output keeps first-occurrence order.
DedupResult dedup_chains(const std::vector<EntityChain>& chains);

// The changes that carry a date, in chain order.
std::vector<NameChange> filter_dated_changes(const std::vector<EntityChain>& chains);

}  // namespace nevo::chains

#endif  // NEVO_CHAINS_H_
