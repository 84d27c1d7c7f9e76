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

#ifndef NEVO_WIKITEXT_H_
#define NEVO_WIKITEXT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nevo::wikitext {

// A page as fetched: the markup is kept byte-exact.
struct RawPage {
  std::string title;
  std::optional<std::int64_t> page_id;
  std::string wikitext;
  std::string retrieved_at;  // ISO-8601, UTC
};

// Visible text of a page. Never contains "[[", "]]", "{{", "}}", "<ref" or
// "<!--".
struct PlainText {
  std::string text;
  std::string source;
};

// Strip results are best effort. Unbalanced or over-deep markup produces
// warnings (prefixed "UnbalancedMarkup") rather than an error.
struct StripResult {
  PlainText text;
  std::vector<std::string> warnings;
};

// Maximum nesting depth for templates and links before a warning is raised.
inline constexpr int kMaxNestingDepth = 64;

// Reduces wikitext to visible text:
//   - [[target|display]] keeps display, [[target]] keeps target
//   - templates, <ref>, comments, tables, file/image/category links vanish
//   - headings keep their text on a line of their own
//   - list markers are dropped, item text stays
//   - HTML entities are decoded
StripResult strip_markup(const RawPage& page);

// Same rules as strip_markup for a fragment; line breaks become spaces.
std::string strip_inline(std::string_view markup,
                         std::vector<std::string>* warnings = nullptr);

struct ListItem {
  std::string text;
  int depth = 1;        // length of the leading '*'/'#' run
  std::size_t line = 0; // zero-based source line
};

// One item per list line (a line whose first non-blank character is '*' or
// '#'), in source order. "#REDIRECT" lines are not list lines.
std::vector<ListItem> extract_list_items(const RawPage& page);

// "#REDIRECT [[Target]]" -> "Target".
std::optional<std::string> redirect_target(std::string_view wikitext);

// True if the page carries a disambiguation template.
bool is_disambiguation(std::string_view wikitext);

// Target of the first internal link of every list line; used to list the
// candidates of a disambiguation page.
std::vector<std::string> list_link_targets(std::string_view wikitext);

}  // namespace nevo::wikitext

#endif  // NEVO_WIKITEXT_H_
