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

#ifndef NEVO_UNICODE_H_
#define NEVO_UNICODE_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace nevo::unicode {

// A decoded code point and the number of UTF-8 bytes it occupied. Malformed
// sequences decode as U+FFFD covering one byte.
struct Decoded {
  char32_t cp;
  std::size_t length;
};

Decoded decode_at(std::string_view text, std::size_t pos);

// Code point ending right before `pos` (pos must be a code point boundary).
Decoded decode_before(std::string_view text, std::size_t pos);

void append_utf8(std::string& out, char32_t cp);

bool is_word_char(char32_t cp);
bool is_upper(char32_t cp);
bool is_space(char32_t cp);

// Simple (one-to-one) case folding.
char32_t fold(char32_t cp);

// Uppercases the first code point only, leaving the rest untouched.
std::string upper_first(std::string_view text);

// Trims Unicode whitespace (including U+00A0) from both ends.
std::string_view trim(std::string_view text);

// Collapses every whitespace run to one ASCII space and trims.
std::string collapse_whitespace(std::string_view text);

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t value);

}  // namespace nevo::unicode

#endif  // NEVO_UNICODE_H_
