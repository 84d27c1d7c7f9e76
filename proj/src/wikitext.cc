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

#include "nevo/wikitext.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <utility>

#include "nevo/unicode.h"

namespace nevo::wikitext {
namespace {

using Warnings = std::vector<std::string>;

constexpr int kMaxFixpointPasses = 8;

char lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

bool starts_with_ci(std::string_view s, std::size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > s.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (lower(s[pos + i]) != lower(prefix[i])) return false;
  }
  return true;
}

std::size_t find_ci(std::string_view s, std::string_view needle, std::size_t from) {
  for (std::size_t i = from; i + needle.size() <= s.size(); ++i) {
    if (starts_with_ci(s, i, needle)) return i;
  }
  return std::string_view::npos;
}

bool is_ascii_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

void warn(Warnings& warnings, std::string message) {
  message.insert(0, "UnbalancedMarkup: ");
  if (std::find(warnings.begin(), warnings.end(), message) == warnings.end()) {
    warnings.push_back(std::move(message));
  }
}

std::string_view trim_ascii(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (true) {
    const std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos
                                                   ? std::string_view::npos
                                                   : nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return lines;
}

// Finds the close of a balanced `open`...`close` construct starting at `pos`
// (which must point at `open`). Returns the index just past the matching
// close, or npos when it never closes.
std::size_t find_matching(std::string_view s, std::size_t pos, std::string_view open,
                          std::string_view close, int* max_depth) {
  int depth = 0;
  std::size_t i = pos;
  while (i < s.size()) {
    if (s.compare(i, open.size(), open) == 0) {
      ++depth;
      *max_depth = std::max(*max_depth, depth);
      i += open.size();
    } else if (s.compare(i, close.size(), close) == 0) {
      --depth;
      i += close.size();
      if (depth == 0) return i;
    } else {
      ++i;
    }
  }
  return std::string_view::npos;
}

std::string remove_comments(std::string_view in, Warnings& warnings) {
  std::string out;
  std::size_t i = 0;
  while (true) {
    const std::size_t open = in.find("<!--", i);
    if (open == std::string_view::npos) {
      out.append(in.substr(i));
      break;
    }
    out.append(in.substr(i, open - i));
    const std::size_t close = in.find("-->", open + 4);
    if (close == std::string_view::npos) {
      warn(warnings, "unclosed comment");
      i = open + 4;
      continue;
    }
    i = close + 3;
  }
  return out;
}

// Elements whose content is invisible in the rendered article.
constexpr std::array<std::string_view, 6> kHiddenElements = {
    "ref", "gallery", "math", "timeline", "imagemap", "score"};

std::string remove_hidden_elements(std::string_view in, Warnings& warnings) {
  std::string out;
  std::size_t i = 0;
  while (i < in.size()) {
    if (in[i] != '<') {
      out += in[i++];
      continue;
    }
    std::string_view name;
    for (std::string_view candidate : kHiddenElements) {
      const std::size_t after = i + 1 + candidate.size();
      if (starts_with_ci(in, i + 1, candidate) &&
          (after == in.size() || in[after] == '>' || in[after] == '/' ||
           in[after] == ' ' || in[after] == '\t' || in[after] == '\n')) {
        name = candidate;
        break;
      }
    }
    if (name.empty()) {
      out += in[i++];
      continue;
    }
    const std::size_t gt = in.find('>', i);
    if (gt == std::string_view::npos) {
      warn(warnings, "unterminated <" + std::string(name) + "> tag");
      i += 1 + name.size();
      continue;
    }
    if (in[gt - 1] == '/') {
      i = gt + 1;
      continue;
    }
    const std::size_t close = find_ci(in, "</" + std::string(name), gt + 1);
    const std::size_t close_gt =
        close == std::string_view::npos ? close : in.find('>', close);
    if (close_gt == std::string_view::npos) {
      warn(warnings, "unclosed <" + std::string(name) + "> element");
      i = gt + 1;
      continue;
    }
    i = close_gt + 1;
  }
  return out;
}

std::string remove_templates(std::string_view in, Warnings& warnings) {
  std::string out;
  std::size_t i = 0;
  while (i < in.size()) {
    const std::size_t open = in.find("{{", i);
    if (open == std::string_view::npos) {
      out.append(in.substr(i));
      break;
    }
    out.append(in.substr(i, open - i));
    int depth = 0;
    const std::size_t end = find_matching(in, open, "{{", "}}", &depth);
    if (depth > kMaxNestingDepth) warn(warnings, "template nesting exceeds depth 64");
    if (end == std::string_view::npos) {
      warn(warnings, "unclosed template");
      i = open + 2;
      continue;
    }
    i = end;
  }
  return out;
}

std::string remove_tables(std::string_view in, Warnings& warnings) {
  const auto lines = split_lines(in);
  std::vector<bool> keep(lines.size(), true);
  std::size_t i = 0;
  while (i < lines.size()) {
    if (!trim_ascii(lines[i]).starts_with("{|")) {
      ++i;
      continue;
    }
    int depth = 0;
    std::size_t j = i;
    for (; j < lines.size(); ++j) {
      const std::string_view t = trim_ascii(lines[j]);
      if (t.starts_with("{|")) ++depth;
      else if (t.starts_with("|}")) --depth;
      if (depth == 0) break;
    }
    if (j == lines.size()) {
      warn(warnings, "unclosed table");
      keep[i] = false;
      ++i;
      continue;
    }
    for (std::size_t k = i; k <= j; ++k) keep[k] = false;
    i = j + 1;
  }
  std::string out;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    if (!keep[k]) continue;
    if (!out.empty() || k > 0) out += '\n';
    out.append(lines[k]);
  }
  return out;
}

bool is_hidden_namespace(std::string_view target) {
  const std::size_t colon = target.find(':');
  if (colon == std::string_view::npos) return false;
  std::string ns;
  for (char c : trim_ascii(target.substr(0, colon))) ns += lower(c);
  if (ns == "file" || ns == "image" || ns == "category" || ns == "media") {
    return true;
  }
  // Interlanguage links: "fr:", "zh-yue:", "simple:".
  if (ns == "simple") return true;
  const std::string_view prefix = trim_ascii(target.substr(0, colon));
  if (prefix.size() < 2 || prefix.size() > 12 || prefix.front() == '-') return false;
  for (char c : prefix) {
    if (!((c >= 'a' && c <= 'z') || c == '-')) return false;
  }
  return prefix.size() <= 3 || prefix.find('-') != std::string_view::npos;
}

std::string replace_links(std::string_view in, Warnings& warnings);

std::string render_link(std::string_view inner, Warnings& warnings) {
  // Split at the first '|' that is not inside a nested link.
  std::size_t pipe = std::string_view::npos;
  int depth = 0;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (inner.compare(i, 2, "[[") == 0) {
      ++depth;
      ++i;
    } else if (inner.compare(i, 2, "]]") == 0) {
      --depth;
      ++i;
    } else if (inner[i] == '|' && depth == 0) {
      pipe = i;
      break;
    }
  }
  std::string_view target = trim_ascii(inner.substr(0, pipe));
  const bool leading_colon = target.starts_with(':');
  if (leading_colon) {
    target.remove_prefix(1);
  } else if (is_hidden_namespace(target)) {
    return {};
  }
  if (pipe == std::string_view::npos) return std::string(target);
  const std::string_view display = inner.substr(pipe + 1);
  if (trim_ascii(display).empty()) {
    // Pipe trick: drop a namespace prefix and a trailing "(...)".
    std::string_view shown = target;
    if (const auto colon = shown.find(':'); colon != std::string_view::npos) {
      shown.remove_prefix(colon + 1);
    }
    if (shown.ends_with(')')) {
      if (const auto paren = shown.rfind(" ("); paren != std::string_view::npos) {
        shown = shown.substr(0, paren);
      }
    }
    return std::string(trim_ascii(shown));
  }
  return replace_links(display, warnings);
}

std::string replace_links(std::string_view in, Warnings& warnings) {
  std::string out;
  std::size_t i = 0;
  while (i < in.size()) {
    const std::size_t open = in.find("[[", i);
    if (open == std::string_view::npos) {
      out.append(in.substr(i));
      break;
    }
    out.append(in.substr(i, open - i));
    int depth = 0;
    const std::size_t end = find_matching(in, open, "[[", "]]", &depth);
    if (depth > kMaxNestingDepth) warn(warnings, "link nesting exceeds depth 64");
    if (end == std::string_view::npos) {
      warn(warnings, "unclosed link");
      i = open + 2;
      continue;
    }
    out += render_link(in.substr(open + 2, end - open - 4), warnings);
    i = end;
  }
  return out;
}

bool has_url_scheme(std::string_view s, std::size_t pos) {
  for (std::string_view scheme : {"http://", "https://", "ftp://", "//", "mailto:"}) {
    if (starts_with_ci(s, pos, scheme)) return true;
  }
  return false;
}

std::string replace_external_links(std::string_view in) {
  std::string out;
  std::size_t i = 0;
  while (i < in.size()) {
    if (in[i] == '[' && has_url_scheme(in, i + 1)) {
      const std::size_t close = in.find_first_of("]\n", i + 1);
      if (close != std::string_view::npos && in[close] == ']') {
        const std::string_view body = in.substr(i + 1, close - i - 1);
        const std::size_t space = body.find(' ');
        if (space != std::string_view::npos) {
          out.append(trim_ascii(body.substr(space + 1)));
        }
        i = close + 1;
        continue;
      }
    }
    out += in[i++];
  }
  return out;
}

std::string remove_tags(std::string_view in) {
  std::string out;
  std::size_t i = 0;
  while (i < in.size()) {
    if (in[i] == '<') {
      std::size_t name = i + 1;
      if (name < in.size() && in[name] == '/') ++name;
      if (name < in.size() && is_ascii_alpha(in[name])) {
        const std::size_t close = in.find_first_of("<>\n", name);
        if (close != std::string_view::npos && in[close] == '>') {
          if (starts_with_ci(in, name, "br")) out += ' ';
          i = close + 1;
          continue;
        }
      }
    }
    out += in[i++];
  }
  return out;
}

std::string remove_emphasis(std::string_view in) {
  std::string out;
  std::size_t i = 0;
  while (i < in.size()) {
    if (in[i] == '\'') {
      std::size_t j = i;
      while (j < in.size() && in[j] == '\'') ++j;
      if (j - i == 1) out += '\'';
      i = j;
      continue;
    }
    out += in[i++];
  }
  return out;
}

struct NamedEntity {
  std::string_view name;
  char32_t cp;
};

constexpr std::array<NamedEntity, 34> kNamedEntities = {{
    {"nbsp", 0x00A0},   {"amp", '&'},        {"lt", '<'},
    {"gt", '>'},        {"quot", '"'},       {"apos", '\''},
    {"ndash", 0x2013},  {"mdash", 0x2014},   {"minus", 0x2212},
    {"hellip", 0x2026}, {"lsquo", 0x2018},   {"rsquo", 0x2019},
    {"ldquo", 0x201C},  {"rdquo", 0x201D},   {"laquo", 0x00AB},
    {"raquo", 0x00BB},  {"thinsp", 0x2009},  {"ensp", 0x2002},
    {"emsp", 0x2003},   {"shy", 0x00AD},     {"times", 0x00D7},
    {"deg", 0x00B0},    {"middot", 0x00B7},  {"bull", 0x2022},
    {"euro", 0x20AC},   {"pound", 0x00A3},   {"copy", 0x00A9},
    {"reg", 0x00AE},    {"sect", 0x00A7},    {"para", 0x00B6},
    {"frac12", 0x00BD}, {"rarr", 0x2192},    {"larr", 0x2190},
    {"harr", 0x2194},
}};

std::optional<char32_t> decode_entity(std::string_view body) {
  if (body.starts_with('#')) {
    std::string digits(body.substr(1));
    int base = 10;
    if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
      base = 16;
      digits.erase(0, 1);
    }
    if (digits.empty()) return std::nullopt;
    char* end = nullptr;
    const unsigned long value = std::strtoul(digits.c_str(), &end, base);
    if (*end != '\0' || value == 0 || value > 0x10FFFF ||
        (value >= 0xD800 && value <= 0xDFFF)) {
      return std::nullopt;
    }
    return static_cast<char32_t>(value);
  }
  for (const auto& entity : kNamedEntities) {
    if (entity.name == body) return entity.cp;
  }
  return std::nullopt;
}

std::string decode_entities(std::string_view in) {
  std::string out;
  std::size_t i = 0;
  while (i < in.size()) {
    if (in[i] == '&') {
      const std::size_t semi = in.find(';', i + 1);
      if (semi != std::string_view::npos && semi - i <= 10) {
        if (auto cp = decode_entity(in.substr(i + 1, semi - i - 1))) {
          unicode::append_utf8(out, *cp);
          i = semi + 1;
          continue;
        }
      }
    }
    out += in[i++];
  }
  return out;
}

std::string remove_magic_words(std::string_view in) {
  std::string out;
  std::size_t i = 0;
  while (i < in.size()) {
    if (in.compare(i, 2, "__") == 0) {
      std::size_t j = i + 2;
      while (j < in.size() && in[j] >= 'A' && in[j] <= 'Z') ++j;
      if (j > i + 2 && in.compare(j, 2, "__") == 0) {
        i = j + 2;
        continue;
      }
    }
    out += in[i++];
  }
  return out;
}

std::string collapse_blanks(std::string_view line) {
  std::string out;
  bool space = false;
  for (char c : line) {
    if (c == ' ' || c == '\t' || c == '\r') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

// Heading markers and list markers go; blank runs shrink to one empty line.
std::string normalize_lines(std::string_view in) {
  std::string out;
  bool pending_blank = false;
  for (std::string_view raw : split_lines(in)) {
    std::string_view line = trim_ascii(raw);
    if (line.size() >= 2 && line.front() == '=' && line.back() == '=') {
      line = line.substr(line.find_first_not_of('=') == std::string_view::npos
                             ? line.size()
                             : line.find_first_not_of('='));
      line = line.substr(0, line.find_last_not_of('=') + 1);
    } else {
      const std::size_t body = line.find_first_not_of("*#:;");
      line = body == std::string_view::npos ? std::string_view{} : line.substr(body);
    }
    if (line.size() >= 4 && line.find_first_not_of('-') == std::string_view::npos) {
      line = {};
    }
    std::string cleaned = collapse_blanks(line);
    if (cleaned.empty()) {
      pending_blank = !out.empty();
      continue;
    }
    if (!out.empty()) out += pending_blank ? "\n\n" : "\n";
    pending_blank = false;
    out += cleaned;
  }
  return out;
}

constexpr std::array<std::string_view, 6> kForbiddenTokens = {
    "[[", "]]", "{{", "}}", "<ref", "<!--"};

// Deletes any forbidden token that survived (stray closers, tokens formed by
// concatenation after removal).
std::string scrub_forbidden(std::string text, Warnings& warnings) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::string_view token : kForbiddenTokens) {
      const std::size_t pos = token == "<ref" ? find_ci(text, token, 0) : text.find(token);
      if (pos != std::string::npos) {
        text.erase(pos, token.size());
        warn(warnings, "stray '" + std::string(token) + "'");
        changed = true;
      }
    }
  }
  return text;
}

std::string strip_pass(std::string_view in, Warnings& warnings) {
  std::string text = remove_comments(in, warnings);
  text = remove_hidden_elements(text, warnings);
  text = remove_templates(text, warnings);
  text = remove_tables(text, warnings);
  text = replace_links(text, warnings);
  text = replace_external_links(text);
  text = remove_tags(text);
  text = remove_emphasis(text);
  text = decode_entities(text);
  text = remove_magic_words(text);
  text = normalize_lines(text);
  return scrub_forbidden(std::move(text), warnings);
}

// Repeats the pass until nothing changes, so the result is a fixed point
// (escaped markup such as "&lt;ref&gt;" cannot resurface on re-stripping).
std::string strip_to_fixpoint(std::string_view in, Warnings& warnings) {
  std::string current = strip_pass(in, warnings);
  for (int pass = 1; pass < kMaxFixpointPasses; ++pass) {
    Warnings ignored;
    std::string next = strip_pass(current, ignored);
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

}  // namespace

StripResult strip_markup(const RawPage& page) {
  StripResult result;
  result.text.source = page.title;
  result.text.text = strip_to_fixpoint(page.wikitext, result.warnings);
  return result;
}

std::string strip_inline(std::string_view markup, std::vector<std::string>* warnings) {
  Warnings local;
  std::string text = strip_to_fixpoint(markup, warnings ? *warnings : local);
  std::replace(text.begin(), text.end(), '\n', ' ');
  return collapse_blanks(text);
}

std::vector<ListItem> extract_list_items(const RawPage& page) {
  std::vector<ListItem> items;
  const auto lines = split_lines(page.wikitext);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    std::string_view line = lines[n];
    const std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos) continue;
    if (line[first] != '*' && line[first] != '#') continue;
    if (starts_with_ci(line, first, "#redirect")) continue;
    const std::size_t body = line.find_first_not_of("*#", first);
    ListItem item;
    item.depth = static_cast<int>(
        (body == std::string_view::npos ? line.size() : body) - first);
    item.line = n;
    if (body != std::string_view::npos) item.text = strip_inline(line.substr(body));
    items.push_back(std::move(item));
  }
  return items;
}

std::optional<std::string> redirect_target(std::string_view wikitext) {
  std::size_t i = wikitext.find_first_not_of(" \t\r\n");
  if (i == std::string_view::npos || !starts_with_ci(wikitext, i, "#redirect")) {
    return std::nullopt;
  }
  i += 9;
  while (i < wikitext.size() && (wikitext[i] == ' ' || wikitext[i] == ':')) ++i;
  if (wikitext.compare(i, 2, "[[") != 0) return std::nullopt;
  const std::size_t end = wikitext.find("]]", i + 2);
  if (end == std::string_view::npos) return std::nullopt;
  std::string_view target = wikitext.substr(i + 2, end - i - 2);
  target = target.substr(0, target.find('|'));
  target = target.substr(0, target.find('#'));
  target = trim_ascii(target);
  if (target.empty()) return std::nullopt;
  return std::string(target);
}

bool is_disambiguation(std::string_view wikitext) {
  std::size_t i = 0;
  while ((i = wikitext.find("{{", i)) != std::string_view::npos) {
    i += 2;
    const std::size_t end = wikitext.find_first_of("|}\n", i);
    std::string name;
    for (char c : trim_ascii(wikitext.substr(i, end - i))) {
      name += c == '_' ? ' ' : lower(c);
    }
    if (name == "disambig" || name == "disamb" || name == "dab" ||
        name == "geodis" || name == "hndis" || name == "numberdis" ||
        name.find("disambiguation") != std::string::npos) {
      return true;
    }
  }
  return false;
}

std::vector<std::string> list_link_targets(std::string_view wikitext) {
  std::vector<std::string> targets;
  for (std::string_view line : split_lines(wikitext)) {
    const std::string_view t = trim_ascii(line);
    if (t.empty() || (t[0] != '*' && t[0] != '#')) continue;
    const std::size_t open = t.find("[[");
    if (open == std::string_view::npos) continue;
    const std::size_t close = t.find("]]", open + 2);
    if (close == std::string_view::npos) continue;
    std::string_view target = t.substr(open + 2, close - open - 2);
    target = trim_ascii(target.substr(0, target.find('|')));
    if (target.empty() || is_hidden_namespace(target)) continue;
    targets.emplace_back(target);
  }
  return targets;
}

}  // namespace nevo::wikitext
