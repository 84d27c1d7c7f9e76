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

#include "nevo/resolve.h"

#include <algorithm>
#include <set>

#include "nevo/error.h"
#include "nevo/unicode.h"

namespace nevo::resolve {

std::string normalize_title(std::string_view name) {
  std::string spaced(name);
  std::replace(spaced.begin(), spaced.end(), '_', ' ');
  std::string collapsed = unicode::collapse_whitespace(spaced);
  if (collapsed.empty()) throw Error(ErrorCode::kEmptyName, "'" + std::string(name) + "'");
  return unicode::upper_first(collapsed);
}

Resolution resolve_name(const std::string& name, corpus::SnapshotStore& store) {
  const std::string start = normalize_title(name);
  std::vector<std::string> redirect_chain;
  std::set<std::string> seen = {start};
  std::string current = start;
  while (true) {
    corpus::PageLookup step;
    try {
      step = store.lookup(current);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kNetworkError || e.code() == ErrorCode::kRateLimited ||
          e.code() == ErrorCode::kNetworkBlocked) {
        throw Error(ErrorCode::kStoreUnavailable, e.what());
      }
      throw;
    }
    switch (step.kind) {
      case corpus::PageLookup::Kind::kMissing:
        return Unresolved{name};
      case corpus::PageLookup::Kind::kRedirect:
        if (static_cast<int>(redirect_chain.size()) == kMaxRedirectChain) {
          throw Error(ErrorCode::kRedirectTooDeep, start);
        }
        redirect_chain.push_back(current);
        if (!seen.insert(step.target).second) {
          throw Error(ErrorCode::kRedirectCycle, start + " reaches " + step.target + " twice");
        }
        current = step.target;
        break;
      case corpus::PageLookup::Kind::kContent:
        if (store.is_disambiguation(current)) {
          Disambiguation d{name, current, {}};
          const auto page = store.read_page(current);
          for (const auto& target : wikitext::list_link_targets(page.wikitext)) {
            try {
              d.candidates.push_back(normalize_title(target));
            } catch (const Error&) {
            }
          }
          return d;
        }
        return ArticleRef{current, store.page_id(current), name, std::move(redirect_chain), {}};
    }
  }
}

ResolvedEntity resolve_entity(const chains::EntityChain& chain, corpus::SnapshotStore& store) {
  ResolvedEntity entity;
  entity.chain = chain;
  std::set<std::string> done;
  for (const auto& name : chain.names) {
    std::string normalized;
    try {
      normalized = normalize_title(name);
    } catch (const Error&) {
      entity.unresolved.push_back({name, "EmptyName", {}});
      continue;
    }
    if (!done.insert(normalized).second) continue;

    Resolution outcome;
    try {
      outcome = resolve_name(name, store);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kStoreUnavailable) throw;
      entity.unresolved.push_back({name, std::string(error_name(e.code())), {}});
      continue;
    }
    if (auto* ref = std::get_if<ArticleRef>(&outcome)) {
      auto same = std::find_if(entity.articles.begin(), entity.articles.end(),
                               [&](const ArticleRef& a) { return a.page_id == ref->page_id; });
      if (same == entity.articles.end()) {
        entity.articles.push_back(std::move(*ref));
      } else {
        same->also_resolved_from.push_back(name);
      }
    } else if (auto* d = std::get_if<Disambiguation>(&outcome)) {
      entity.unresolved.push_back({name, "Disambiguation", std::move(d->candidates)});
    } else {
      entity.unresolved.push_back({name, "Unresolved", {}});
    }
  }
  return entity;
}

}  // namespace nevo::resolve
