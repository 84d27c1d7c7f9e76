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

#ifndef NEVO_RESOLVE_H_
#define NEVO_RESOLVE_H_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "nevo/chains.h"
#include "nevo/corpus.h"
#include "nevo/title.h"

namespace nevo::resolve {

inline constexpr int kMaxRedirectChain = 8;

struct ArticleRef {
  std::string title;
  std::int64_t page_id = 0;
  std::string resolved_from;
  std::vector<std::string> redirect_chain;  // titles passed through, in order
  // Further chain names that landed on the same page.
  std::vector<std::string> also_resolved_from;
};

struct Unresolved {
  std::string name;
};

struct Disambiguation {
  std::string name;
  std::string page;
  std::vector<std::string> candidates;
};

using Resolution = std::variant<ArticleRef, Unresolved, Disambiguation>;

// Follows redirects from normalize_title(name). Throws Error(kRedirectCycle),
// Error(kRedirectTooDeep), Error(kStoreUnavailable).
Resolution resolve_name(const std::string& name, corpus::SnapshotStore& store);

struct UnresolvedName {
  std::string name;
  std::string reason;  // "Unresolved", "Disambiguation", "RedirectCycle", ...
  std::vector<std::string> candidates;
};

struct ResolvedEntity {
  chains::EntityChain chain;
  std::vector<ArticleRef> articles;  // distinct page ids, resolution order
  std::vector<UnresolvedName> unresolved;

  bool resolved() const { return !articles.empty(); }
};

// Resolves every distinct name of the chain. Only Error(kStoreUnavailable)
// escapes; per-name failures land in `unresolved`.
ResolvedEntity resolve_entity(const chains::EntityChain& chain, corpus::SnapshotStore& store);

}  // namespace nevo::resolve

#endif  // NEVO_RESOLVE_H_
