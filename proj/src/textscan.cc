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

#include "nevo/textscan.h"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>

#include "nevo/error.h"
#include "nevo/unicode.h"

namespace nevo::textscan {
namespace {

bool is_closer(char32_t cp) {
  return cp == '"' || cp == '\'' || cp == ')' || cp == ']' || cp == U'’' || cp == U'”' ||
         cp == U'»';
}

bool is_opener(char32_t cp) {
  return cp == '"' || cp == '\'' || cp == '(' || cp == '[' || cp == U'‘' || cp == U'“' ||
         cp == U'«';
}

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

bool equals_ci(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

std::u32string normalize(std::string_view text, bool fold_all) {
  std::u32string out;
  bool space = false;
  for (std::size_t i = 0; i < text.size();) {
    const auto d = unicode::decode_at(text, i);
    i += d.length;
    if (unicode::is_space(d.cp)) {
      space = !out.empty();
      continue;
    }
    if (space) out += U' ';
    space = false;
    out += fold_all ? unicode::fold(d.cp) : d.cp;
  }
  return out;
}

// Token-bounded search. With `exact_first` the first code point must match
// exactly and the rest up to case; otherwise everything matches up to case.
bool contains_token(const std::u32string& hay, const std::u32string& needle, bool exact_first) {
  if (needle.empty() || needle.size() > hay.size()) return false;
  const bool word_start = unicode::is_word_char(needle.front());
  const bool word_end = unicode::is_word_char(needle.back());
  for (std::size_t p = 0; p + needle.size() <= hay.size(); ++p) {
    if (word_start && p > 0 && unicode::is_word_char(hay[p - 1])) continue;
    const std::size_t end = p + needle.size();
    if (word_end && end < hay.size() && unicode::is_word_char(hay[end])) continue;
    bool match = !exact_first || hay[p] == needle[0];
    for (std::size_t k = exact_first ? 1 : 0; match && k < needle.size(); ++k) {
      match = unicode::fold(hay[p + k]) == unicode::fold(needle[k]);
    }
    if (match) return true;
  }
  return false;
}

bool ends_abbreviation(std::string_view text, std::size_t start, std::size_t dot,
                       const SegmenterOptions& options) {
  std::size_t k = dot;
  while (k > start) {
    const auto d = unicode::decode_before(text, k);
    if (unicode::is_space(d.cp) || is_opener(d.cp)) break;
    k -= d.length;
  }
  const std::string_view word = text.substr(k, dot - k);
  if (word.empty()) return false;
  for (const auto& abbreviation : options.abbreviations) {
    if (equals_ci(word, abbreviation)) return true;
  }
  const auto first = unicode::decode_at(word, 0);
  return first.length == word.size() && unicode::is_upper(first.cp);
}

}  // namespace

std::vector<Span> segment_sentences(std::string_view text, const SegmenterOptions& options) {
  std::vector<Span> spans;
  auto push = [&](std::size_t begin, std::size_t end) {
    const std::string_view piece = unicode::trim(text.substr(begin, end - begin));
    if (piece.empty()) return;
    const std::size_t b = static_cast<std::size_t>(piece.data() - text.data());
    spans.push_back({b, b + piece.size()});
  };

  std::size_t line_start = 0;
  while (true) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::size_t start = line_start;
    std::size_t i = line_start;
    while (i < line_end) {
      if (!is_terminator(text[i])) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line_end && is_terminator(text[j])) ++j;
      while (j < line_end) {
        const auto d = unicode::decode_at(text, j);
        if (!is_closer(d.cp)) break;
        j += d.length;
      }
      const std::size_t sentence_end = j;
      bool boundary = j == line_end;
      if (!boundary && unicode::is_space(unicode::decode_at(text, j).cp)) {
        std::size_t k = j;
        while (k < line_end) {
          const auto d = unicode::decode_at(text, k);
          if (!unicode::is_space(d.cp) && !is_opener(d.cp)) break;
          k += d.length;
        }
        boundary = k < line_end && unicode::is_upper(unicode::decode_at(text, k).cp);
      }
      if (boundary && text[i] == '.' && (i + 1 == line_end || text[i + 1] != '.') &&
          ends_abbreviation(text, start, i, options)) {
        boundary = false;
      }
      if (boundary) {
        push(start, sentence_end);
        start = sentence_end;
      }
      i = j;
    }
    push(start, line_end);
    if (line_end == text.size()) break;
    line_start = line_end + 1;
  }
  return spans;
}

Document::Document(resolve::ArticleRef article, wikitext::PlainText text,
                   const SegmenterOptions& options)
    : article_(std::move(article)), text_(std::move(text)) {
  sentences_ = segment_sentences(text_.text, options);
  normalized_.reserve(sentences_.size());
  for (std::size_t i = 0; i < sentences_.size(); ++i) {
    normalized_.push_back(normalize(sentence(i), false));
  }
}

std::string_view Document::sentence(std::size_t index) const {
  const Span& span = sentences_.at(index);
  return std::string_view(text_.text).substr(span.begin, span.end - span.begin);
}

std::string_view component_name(Component component) {
  switch (component) {
    case Component::kPreceding: return "preceding";
    case Component::kSucceeding: return "succeeding";
    case Component::kDate: return "date";
  }
  return "";
}

std::string strip_disambiguator(std::string_view name) {
  std::string_view trimmed = unicode::trim(name);
  if (trimmed.ends_with(')')) {
    const std::size_t open = trimmed.rfind(" (");
    if (open != std::string_view::npos && open > 0) {
      return std::string(unicode::trim(trimmed.substr(0, open)));
    }
  }
  return std::string(trimmed);
}

OccurrenceSet find_name_occurrences(const Document& doc, std::string_view name,
                                    Component component) {
  OccurrenceSet set{component, {}};
  const std::u32string needle = normalize(strip_disambiguator(name), false);
  if (needle.empty()) return set;
  for (std::size_t i = 0; i < doc.sentence_count(); ++i) {
    if (contains_token(doc.normalized_sentence(i), needle, true)) {
      set.sentence_indices.push_back(static_cast<int>(i));
    }
  }
  return set;
}

OccurrenceSet find_date_occurrences(const Document& doc, const chains::PartialDate& date) {
  OccurrenceSet set{Component::kDate, {}};
  const std::string digits = std::to_string(date.year < 0 ? -date.year : date.year);
  const std::u32string needle(digits.begin(), digits.end());
  for (std::size_t i = 0; i < doc.sentence_count(); ++i) {
    if (contains_token(doc.normalized_sentence(i), needle, true)) {
      set.sentence_indices.push_back(static_cast<int>(i));
    }
  }
  return set;
}

std::optional<Coverage> smallest_covering_window(std::span<const std::span<const int>> lists) {
  if (lists.empty()) return std::nullopt;
  for (const auto& list : lists) {
    if (list.empty()) return std::nullopt;
  }
  // Min-heap of (value, list); `high` tracks the largest head.
  using Head = std::pair<int, std::size_t>;
  std::priority_queue<Head, std::vector<Head>, std::greater<>> heads;
  std::vector<std::size_t> position(lists.size(), 0);
  int high = std::numeric_limits<int>::min();
  for (std::size_t k = 0; k < lists.size(); ++k) {
    heads.emplace(lists[k][0], k);
    high = std::max(high, lists[k][0]);
  }
  Coverage best{std::numeric_limits<int>::max(), {}};
  while (true) {
    const auto [low, k] = heads.top();
    const int width = high - low;
    if (width < best.distance || (width == best.distance && low < best.window.first)) {
      best = {width, {low, high}};
    }
    heads.pop();
    if (++position[k] == lists[k].size()) break;
    const int next = lists[k][position[k]];
    heads.emplace(next, k);
    high = std::max(high, next);
  }
  return best;
}

std::optional<Coverage> min_sentence_distance(const OccurrenceSet& a, const OccurrenceSet& b,
                                              const OccurrenceSet& c) {
  const std::array<std::span<const int>, 3> lists = {
      std::span<const int>(a.sentence_indices), std::span<const int>(b.sentence_indices),
      std::span<const int>(c.sentence_indices)};
  return smallest_covering_window(lists);
}

MentionScan scan_document(const chains::NameChange& change, const Document& doc) {
  MentionScan scan;
  scan.change = change;
  scan.article = doc.article();
  scan.occurrences[0] = find_name_occurrences(doc, change.preceding, Component::kPreceding);
  scan.occurrences[1] = find_name_occurrences(doc, change.succeeding, Component::kSucceeding);
  scan.occurrences[2] = change.date ? find_date_occurrences(doc, *change.date)
                                    : OccurrenceSet{Component::kDate, {}};
  if (auto coverage =
          min_sentence_distance(scan.occurrences[0], scan.occurrences[1], scan.occurrences[2])) {
    scan.distance = coverage->distance;
    scan.window = coverage->window;
  }
  return scan;
}

MentionScan scan_change(const chains::NameChange& change, std::span<const Document> docs) {
  if (docs.empty()) {
    throw Error(ErrorCode::kNoDocuments, change.preceding + " -> " + change.succeeding);
  }
  std::optional<MentionScan> best;
  std::optional<MentionScan> first;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    MentionScan scan = scan_document(change, docs[i]);
    scan.document_index = i;
    if (scan.distance && (!best || *scan.distance < *best->distance)) best = scan;
    if (i == 0) first = std::move(scan);
  }
  return best ? *best : *first;
}

SignalLexicon SignalLexicon::defaults() {
  SignalLexicon lexicon;
  lexicon.entries_ = {{"became", {"became", "become"}},
                      {"rename", {"rename", "renamed"}},
                      {"change", {"change", "changed"}}};
  return lexicon;
}

SignalLexicon SignalLexicon::parse(std::string_view text) {
  SignalLexicon lexicon;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    std::replace(line.begin(), line.end(), ',', ' ');
    std::replace(line.begin(), line.end(), '\t', ' ');
    const std::string words = unicode::collapse_whitespace(line);
    if (!words.empty() && words[0] != '#') {
      Entry entry;
      std::size_t p = 0;
      while (p < words.size()) {
        std::size_t q = words.find(' ', p);
        if (q == std::string::npos) q = words.size();
        std::string word = words.substr(p, q - p);
        if (entry.lemma.empty()) entry.lemma = word;
        if (std::find(entry.forms.begin(), entry.forms.end(), word) == entry.forms.end()) {
          entry.forms.push_back(std::move(word));
        }
        p = q + 1;
      }
      lexicon.entries_.push_back(std::move(entry));
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return lexicon;
}

std::vector<std::string> SignalLexicon::match(std::string_view text) const {
  const std::u32string hay = normalize(text, true);
  std::vector<std::string> lemmas;
  for (const auto& entry : entries_) {
    for (const auto& form : entry.forms) {
      if (contains_token(hay, normalize(form, true), false)) {
        lemmas.push_back(entry.lemma);
        break;
      }
    }
  }
  return lemmas;
}

Excerpt extract_excerpt(const Document& doc, const MentionScan& scan, int context,
                        const SignalLexicon& lexicon) {
  if (!scan.distance || !scan.window) {
    throw Error(ErrorCode::kWindowAbsent, scan.change.preceding + " -> " + scan.change.succeeding);
  }
  if (context < 0) throw Error(ErrorCode::kOutOfRange, "negative context");
  const int last_sentence = static_cast<int>(doc.sentence_count()) - 1;
  Excerpt excerpt;
  excerpt.sentence_range = {std::max(0, scan.window->first - context),
                            std::min(last_sentence, scan.window->last + context)};
  for (int i = excerpt.sentence_range.first; i <= excerpt.sentence_range.last; ++i) {
    if (!excerpt.text.empty()) excerpt.text += ' ';
    excerpt.text += doc.sentence(static_cast<std::size_t>(i));
  }
  excerpt.signal_words = lexicon.match(excerpt.text);
  return excerpt;
}

}  // namespace nevo::textscan
