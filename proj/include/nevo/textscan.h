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

#ifndef NEVO_TEXTSCAN_H_
#define NEVO_TEXTSCAN_H_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nevo/chains.h"
#include "nevo/resolve.h"
#include "nevo/wikitext.h"

namespace nevo::textscan {

// Half-open byte range [begin, end) into the document text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

struct SegmenterOptions {
  // Compared case-insensitively against the word before a '.'.
  std::vector<std::string> abbreviations = {"Dr", "Mr", "Mrs", "Ms", "St", "no",
                                            "vol", "ca", "c", "e.g", "i.e"};
};

// Splits at '.', '!' or '?' followed by whitespace and an uppercase letter
// (or by the end of the text), unless the '.' ends a listed abbreviation or
// a single-capital initial. Every line break is a boundary. Spans are
// trimmed, non-empty and strictly increasing.
std::vector<Span> segment_sentences(std::string_view text, const SegmenterOptions& options = {});

class Document {
 public:
  Document(resolve::ArticleRef article, wikitext::PlainText text,
           const SegmenterOptions& options = {});

  const resolve::ArticleRef& article() const { return article_; }
  const wikitext::PlainText& text() const { return text_; }
  const std::vector<Span>& sentences() const { return sentences_; }
  std::size_t sentence_count() const { return sentences_.size(); }
  std::string_view sentence(std::size_t index) const;

  // Sentence as code points with whitespace runs folded to U+0020.
  const std::u32string& normalized_sentence(std::size_t index) const {
    return normalized_[index];
  }

 private:
  resolve::ArticleRef article_;
  wikitext::PlainText text_;
  std::vector<Span> sentences_;
  std::vector<std::u32string> normalized_;
};

enum class Component { kPreceding, kSucceeding, kDate };

std::string_view component_name(Component component);

struct OccurrenceSet {
  Component component = Component::kPreceding;
  std::vector<int> sentence_indices;  // sorted, unique
};

// Drops one trailing " (...)" disambiguator: "Tokyo (city)" -> "Tokyo".
std::string strip_disambiguator(std::string_view name);

// Token-bounded matches of the name; the first character must match exactly,
// the rest case-insensitively.
OccurrenceSet find_name_occurrences(const Document& doc, std::string_view name,
                                    Component component = Component::kPreceding);

// Sentences holding the year as a standalone digit token. A fuller rendering
// ("1 May 1975") always contains that token, so the year alone decides.
OccurrenceSet find_date_occurrences(const Document& doc, const chains::PartialDate& date);

struct Window {
  int first = 0;
  int last = 0;

  friend bool operator==(const Window&, const Window&) = default;
};

struct Coverage {
  int distance = 0;
  Window window;

  friend bool operator==(const Coverage&, const Coverage&) = default;
};

// Smallest range [first, last] holding at least one element of every list,
// via a k-way merge that always advances the list holding the current
// minimum. Ties go to the smallest start. Absent if any list is empty.
std::optional<Coverage> smallest_covering_window(std::span<const std::span<const int>> lists);

std::optional<Coverage> min_sentence_distance(const OccurrenceSet& a, const OccurrenceSet& b,
                                              const OccurrenceSet& c);

struct MentionScan {
  chains::NameChange change;
  resolve::ArticleRef article;
  std::array<OccurrenceSet, 3> occurrences;
  std::optional<int> distance;
  std::optional<Window> window;
  std::size_t document_index = 0;  // which of the scanned documents won
};

MentionScan scan_document(const chains::NameChange& change, const Document& doc);

// Scans every document and keeps the smallest distance, ties going to the
// earlier document. Without any full triple the first document's
// occurrences are reported. Throws Error(kNoDocuments).
MentionScan scan_change(const chains::NameChange& change, std::span<const Document> docs);

// Lemmas with the surface forms that count as a hit for them.
class SignalLexicon {
 public:
  struct Entry {
    std::string lemma;
    std::vector<std::string> forms;
  };

  // became {became, become}, rename {rename, renamed}, change {change, changed}.
  static SignalLexicon defaults();

  // One entry per non-empty line: the lemma followed by extra forms,
  // separated by whitespace or commas. '#' starts a comment line.
  static SignalLexicon parse(std::string_view text);

  const std::vector<Entry>& entries() const { return entries_; }

  // Lemmas whose forms occur as whole tokens, case-insensitively, in order.
  std::vector<std::string> match(std::string_view text) const;

 private:
  std::vector<Entry> entries_;
};

struct Excerpt {
  Window sentence_range;
  std::string text;
  std::vector<std::string> signal_words;
};

// The scan window widened by `context` sentences each side, clamped to the
// document. Throws Error(kWindowAbsent).
Excerpt extract_excerpt(const Document& doc, const MentionScan& scan, int context = 1,
                        const SignalLexicon& lexicon = SignalLexicon::defaults());

}  // namespace nevo::textscan

#endif  // NEVO_TEXTSCAN_H_
