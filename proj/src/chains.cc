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

#include "nevo/chains.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <regex>

#include "nevo/error.h"
#include "nevo/title.h"
#include "nevo/unicode.h"

namespace nevo::chains {
namespace {

constexpr std::array<std::string_view, 12> kMonths = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

std::optional<int> month_number(std::string word) {
  for (char& c : word) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (word == "sept") return 9;
  for (std::size_t m = 0; m < kMonths.size(); ++m) {
    std::string full(kMonths[m]);
    for (char& c : full) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (word == full || (word.size() == 3 && full.compare(0, 3, word) == 0)) {
      return static_cast<int>(m) + 1;
    }
  }
  return std::nullopt;
}

bool is_leap(int year) {
  return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
  static constexpr std::array<int, 12> kDays = {31, 28, 31, 30, 31, 30,
                                                31, 31, 30, 31, 30, 31};
  return month == 2 && is_leap(year) ? 29 : kDays[static_cast<std::size_t>(month - 1)];
}

[[noreturn]] void unparseable(std::string_view text) {
  throw Error(ErrorCode::kUnparseableDate, "'" + std::string(text) + "'");
}

struct Segment {
  std::string name;
  std::optional<PartialDate> date;
};

Segment split_segment(std::string_view raw) {
  const std::string_view text = unicode::trim(raw);
  if (text.ends_with(')')) {
    int depth = 0;
    for (std::size_t i = text.size(); i-- > 0;) {
      if (text[i] == ')') ++depth;
      if (text[i] == '(' && --depth == 0) {
        try {
          PartialDate date = parse_date(text.substr(i + 1, text.size() - i - 2));
          return {std::string(unicode::trim(text.substr(0, i))), date};
        } catch (const Error&) {
          // Not a date: the parenthetical is part of the name.
        }
        break;
      }
    }
  }
  return {std::string(text), std::nullopt};
}

constexpr std::array<std::string_view, 3> kArrows = {"→", "->", "⇒"};

std::vector<std::string_view> split_arrows(std::string_view item) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < item.size()) {
    bool matched = false;
    for (std::string_view arrow : kArrows) {
      if (item.compare(i, arrow.size(), arrow) == 0) {
        parts.push_back(item.substr(start, i - start));
        i += arrow.size();
        start = i;
        matched = true;
        break;
      }
    }
    if (!matched) ++i;
  }
  parts.push_back(item.substr(start));
  return parts;
}

}  // namespace

std::strong_ordering compare_dates(const PartialDate& a, const PartialDate& b) {
  if (auto c = a.year <=> b.year; c != 0) return c;
  if (auto c = a.month.value_or(0) <=> b.month.value_or(0); c != 0) return c;
  return a.day.value_or(0) <=> b.day.value_or(0);
}

std::string format_date(const PartialDate& date) {
  std::string out = date.approximate ? "c. " : "";
  if (date.day) out += std::to_string(*date.day) + " ";
  if (date.month) out += std::string(kMonths[static_cast<std::size_t>(*date.month - 1)]) + " ";
  if (date.year < 0) {
    out += std::to_string(-date.year) + " BC";
  } else {
    out += std::to_string(date.year);
  }
  return out;
}

PartialDate parse_date(std::string_view input) {
  std::string text(unicode::trim(input));
  PartialDate date;

  static const std::regex kApprox(R"(^(c|ca)\.\s*)", std::regex::icase);
  std::smatch m;
  if (std::regex_search(text, m, kApprox)) {
    date.approximate = true;
    text = m.suffix();
  }
  static const std::regex kEra(R"(\s+(BC|BCE|AD|CE)$)", std::regex::icase);
  bool bce = false;
  if (std::regex_search(text, m, kEra)) {
    const std::string era = m[1];
    bce = era.size() >= 2 && (era[0] == 'B' || era[0] == 'b');
    text = m.prefix();
  }

  static const std::regex kDayMonthYear(R"(^(\d{1,2})\s+([A-Za-z]+)\.?\s+(\d{1,4})$)");
  static const std::regex kMonthDayYear(R"(^([A-Za-z]+)\.?\s+(\d{1,2}),\s*(\d{1,4})$)");
  static const std::regex kMonthYear(R"(^([A-Za-z]+)\.?\s+(\d{1,4})$)");
  static const std::regex kYear(R"(^(\d{1,4})$)");

  std::optional<int> month;
  std::optional<int> day;
  int year = 0;
  if (std::regex_match(text, m, kDayMonthYear)) {
    day = std::stoi(m[1]);
    month = month_number(m[2]);
    year = std::stoi(m[3]);
    if (!month) unparseable(input);
  } else if (std::regex_match(text, m, kMonthDayYear)) {
    month = month_number(m[1]);
    day = std::stoi(m[2]);
    year = std::stoi(m[3]);
    if (!month) unparseable(input);
  } else if (std::regex_match(text, m, kMonthYear)) {
    month = month_number(m[1]);
    year = std::stoi(m[2]);
    if (!month) unparseable(input);
  } else if (std::regex_match(text, m, kYear)) {
    year = std::stoi(m[1]);
  } else {
    unparseable(input);
  }
  if (bce) year = -year;
  if (day && (*day < 1 || *day > days_in_month(year, *month))) unparseable(input);
  date.year = year;
  date.month = month;
  date.day = day;
  return date;
}

std::string chain_id(const std::vector<std::string>& names) {
  std::string key;
  for (const auto& name : names) {
    key += resolve::normalize_title(name);
    key += '\x1f';
  }
  return unicode::hex64(unicode::fnv1a64(key));
}

EntityChain parse_chain_item(std::string_view item, std::string_view source_list,
                             int item_index) {
  const auto parts = split_arrows(item);
  if (parts.size() < 2) {
    throw Error(ErrorCode::kNotAChain, "no arrow in '" + std::string(item) + "'");
  }
  EntityChain chain;
  std::vector<std::optional<PartialDate>> dates;
  for (std::string_view part : parts) {
    Segment segment = split_segment(part);
    if (segment.name.empty()) {
      throw Error(ErrorCode::kEmptySegment, "in '" + std::string(item) + "'");
    }
    chain.names.push_back(std::move(segment.name));
    dates.push_back(segment.date);
  }
  for (std::size_t i = 0; i + 1 < chain.names.size(); ++i) {
    NameChange change;
    change.preceding = chain.names[i];
    change.succeeding = chain.names[i + 1];
    if (resolve::normalize_title(change.preceding) ==
        resolve::normalize_title(change.succeeding)) {
      throw Error(ErrorCode::kNotAChain,
                  "'" + change.preceding + "' is followed by itself");
    }
    change.date = dates[i + 1];
    change.source_list = std::string(source_list);
    change.item_index = item_index;
    chain.changes.push_back(std::move(change));
  }
  chain.id = chain_id(chain.names);
  if (!source_list.empty()) chain.sources.emplace_back(source_list);
  return chain;
}

std::string format_chain(const EntityChain& chain) {
  std::string out;
  for (std::size_t i = 0; i < chain.names.size(); ++i) {
    if (i > 0) out += " → ";
    out += chain.names[i];
    if (i > 0 && chain.changes[i - 1].date) {
      out += " (" + format_date(*chain.changes[i - 1].date) + ")";
    }
  }
  return out;
}

DedupResult dedup_chains(const std::vector<EntityChain>& chains) {
  DedupResult result;
  std::map<std::string, std::size_t> by_id;
  for (const EntityChain& chain : chains) {
    const std::string id = chain_id(chain.names);
    auto [it, inserted] = by_id.emplace(id, result.chains.size());
    if (inserted) {
      result.chains.push_back(chain);
      result.chains.back().id = id;
      continue;
    }
    ++result.merged;
    EntityChain& kept = result.chains[it->second];
    for (std::size_t i = 0; i < kept.changes.size(); ++i) {
      NameChange& target = kept.changes[i];
      const NameChange& other = chain.changes[i];
      if (!other.date) continue;
      if (!target.date) {
        target.date = other.date;
      } else if (!(*target.date == *other.date)) {
        result.conflicts.push_back({id, target.preceding, target.succeeding,
                                    *target.date, *other.date, other.source_list});
      }
    }
    for (const auto& source : chain.sources) {
      if (std::find(kept.sources.begin(), kept.sources.end(), source) == kept.sources.end()) {
        kept.sources.push_back(source);
      }
    }
  }
  return result;
}

std::vector<NameChange> filter_dated_changes(const std::vector<EntityChain>& chains) {
  std::vector<NameChange> dated;
  for (const auto& chain : chains) {
    for (const auto& change : chain.changes) {
      if (change.date) dated.push_back(change);
    }
  }
  return dated;
}

}  // namespace nevo::chains
