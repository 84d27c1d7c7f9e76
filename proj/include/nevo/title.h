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

#ifndef NEVO_TITLE_H_
#define NEVO_TITLE_H_

#include <string>
#include <string_view>

namespace nevo::resolve {

// MediaWiki title canonicalization: trims, turns underscores into spaces,
// collapses whitespace runs and uppercases the first character. Everything
// else, diacritics included, is left alone. Throws Error(kEmptyName).
std::string normalize_title(std::string_view name);

}  // namespace nevo::resolve

#endif  // NEVO_TITLE_H_
