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

#include "nevo/corpus.h"

#include <algorithm>
#include <ctime>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "nevo/error.h"
#include "nevo/title.h"

namespace nevo::corpus {
namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kMaxRedirectHops = 8;

std::atomic<int> g_guards{0};
std::atomic<std::uint64_t> g_operations{0};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file_atomic(const fs::path& path, std::string_view contents) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
      throw Error(ErrorCode::kStoreUnavailable, "cannot write " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

std::int64_t fallback_page_id(const std::string& title) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : title) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return static_cast<std::int64_t>(hash % ((1ULL << 53) - 1)) + 1;
}

ordered_json manifest_to_json(const Manifest& m) {
  ordered_json j;
  j["source"] = m.source;
  j["retrieved_at"] = m.retrieved_at;
  j["page_count"] = m.page_count;
  j["lists"] = m.lists;
  j["page_ids"] = ordered_json::object();
  for (const auto& [title, id] : m.page_ids) j["page_ids"][title] = id;
  j["disambiguation"] = m.disambiguation;
  j["failures"] = ordered_json::array();
  for (const auto& f : m.failures) {
    j["failures"].push_back({{"title", f.title}, {"error", f.error}});
  }
  return j;
}

Manifest manifest_from_json(const nlohmann::json& j) {
  Manifest m;
  m.source = j.value("source", "");
  m.retrieved_at = j.value("retrieved_at", "");
  m.page_count = j.value("page_count", std::int64_t{0});
  if (j.contains("lists")) m.lists = j["lists"].get<std::vector<std::string>>();
  if (j.contains("page_ids")) {
    for (const auto& [title, id] : j["page_ids"].items()) {
      m.page_ids[resolve::normalize_title(title)] = id.get<std::int64_t>();
    }
  }
  if (j.contains("disambiguation")) {
    for (const auto& title : j["disambiguation"]) {
      m.disambiguation.insert(resolve::normalize_title(title.get<std::string>()));
    }
  }
  if (j.contains("failures")) {
    for (const auto& f : j["failures"]) {
      m.failures.push_back({f.value("title", ""), f.value("error", "")});
    }
  }
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------

NetworkGuard::NetworkGuard() { ++g_guards; }
NetworkGuard::~NetworkGuard() { --g_guards; }
bool NetworkGuard::active() { return g_guards.load() > 0; }

std::uint64_t network_operations() { return g_operations.load(); }

std::string percent_encode(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : text) {
    if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
        c == '-' || c == '_' || c == '.' || c == '~') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 0xF];
    }
  }
  return out;
}

std::string percent_decode(std::string_view text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '%' && i + 2 < text.size()) {
      const std::string hex(text.substr(i + 1, 2));
      char* end = nullptr;
      const long value = std::strtol(hex.c_str(), &end, 16);
      if (end == hex.c_str() + 2) {
        out += static_cast<char>(value);
        i += 2;
        continue;
      }
    }
    out += text[i];
  }
  return out;
}

std::string utc_timestamp_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

// ---------------------------------------------------------------------------

MediaWikiClient::MediaWikiClient(std::unique_ptr<HttpTransport> transport,
                                 ClientOptions options)
    : transport_(std::move(transport)), options_(std::move(options)) {
  if (!options_.sleep) {
    options_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
}

HttpResponse MediaWikiClient::send(const std::string& target) {
  ++g_operations;
  if (NetworkGuard::active()) {
    throw Error(ErrorCode::kNetworkBlocked, "request to " + target);
  }
  {
    std::lock_guard lock(pace_mu_);
    const auto now = std::chrono::steady_clock::now();
    if (now < next_slot_) {
      options_.sleep(std::chrono::duration_cast<std::chrono::milliseconds>(next_slot_ - now));
    }
    next_slot_ = std::max(now, next_slot_) + options_.min_interval;
  }
  return transport_->get(target);
}

PageQuery MediaWikiClient::query_page(const std::string& title) {
  const std::string target =
      options_.api_path +
      "?action=query&format=json&formatversion=2&redirects=1"
      "&prop=revisions%7Cpageprops&rvprop=content&rvslots=main"
      "&ppprop=disambiguation&maxlag=5&titles=" +
      percent_encode(title);

  bool throttled = false;
  std::string last_error = "no attempt made";
  for (int attempt = 0; attempt < options_.attempts; ++attempt) {
    if (attempt > 0) options_.sleep(options_.initial_backoff * (1 << (attempt - 1)));
    HttpResponse response;
    try {
      response = send(target);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kNetworkBlocked) throw;
      throttled = false;
      last_error = e.what();
      continue;
    } catch (const std::exception& e) {
      throttled = false;
      last_error = e.what();
      continue;
    }
    if (response.status == 429) {
      throttled = true;
      last_error = "HTTP 429";
      continue;
    }
    if (response.status >= 500) {
      throttled = false;
      last_error = "HTTP " + std::to_string(response.status);
      continue;
    }
    if (response.status != 200) {
      throw Error(ErrorCode::kNetworkError, "HTTP " + std::to_string(response.status));
    }
    const auto j = nlohmann::json::parse(response.body, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::kNetworkError, "malformed API response");
    if (j.contains("error")) {
      const std::string code = j["error"].value("code", "");
      if (code == "maxlag" || code == "ratelimited") {
        throttled = true;
        last_error = code;
        continue;
      }
      throw Error(ErrorCode::kNetworkError, "API error " + code);
    }

    PageQuery result;
    const auto& query = j.value("query", nlohmann::json::object());
    for (const auto& r : query.value("redirects", nlohmann::json::array())) {
      result.redirects.emplace_back(r.value("from", ""), r.value("to", ""));
    }
    const auto& pages = query.value("pages", nlohmann::json::array());
    if (pages.empty()) {
      result.title = title;
      result.missing = true;
      return result;
    }
    const auto& page = pages.front();
    result.title = page.value("title", title);
    result.missing = page.value("missing", false) || page.value("invalid", false);
    if (!result.missing) {
      result.page_id = page.value("pageid", std::int64_t{0});
      const auto& revisions = page.value("revisions", nlohmann::json::array());
      if (!revisions.empty()) {
        result.wikitext = revisions.front()["slots"]["main"].value("content", "");
      }
      result.disambiguation = page.contains("pageprops") &&
                              page["pageprops"].contains("disambiguation");
    }
    return result;
  }
  throw Error(throttled ? ErrorCode::kRateLimited : ErrorCode::kNetworkError,
              title + " after " + std::to_string(options_.attempts) + " attempts: " +
                  last_error);
}

// ---------------------------------------------------------------------------

std::string Manifest::snapshot_id() const { return source + "@" + retrieved_at; }

SnapshotStore::SnapshotStore(fs::path root, StoreMode mode,
                             std::unique_ptr<MediaWikiClient> client)
    : root_(std::move(root)), mode_(mode), client_(std::move(client)) {}

std::unique_ptr<SnapshotStore> SnapshotStore::open_offline(const fs::path& root) {
  const fs::path manifest_path = root / "manifest.json";
  if (!fs::is_directory(root) || !fs::exists(manifest_path)) {
    throw Error(ErrorCode::kStoreUnavailable, "no snapshot at " + root.string());
  }
  std::unique_ptr<SnapshotStore> store(new SnapshotStore(root, StoreMode::kOffline, nullptr));
  const auto j = nlohmann::json::parse(read_file(manifest_path), nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(ErrorCode::kStoreUnavailable, "unreadable manifest " + manifest_path.string());
  }
  store->manifest_ = manifest_from_json(j);

  std::istringstream redirects(read_file(root / "redirects.tsv"));
  std::string line;
  while (std::getline(redirects, line)) {
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorCode::kStoreUnavailable, "malformed redirects.tsv line: " + line);
    }
    store->redirects_[resolve::normalize_title(line.substr(0, tab))] =
        resolve::normalize_title(line.substr(tab + 1));
  }
  const auto files = static_cast<std::int64_t>(store->count_page_files());
  if (files != store->manifest_.page_count) {
    throw Error(ErrorCode::kStoreUnavailable,
                "manifest page_count " + std::to_string(store->manifest_.page_count) +
                    " but " + std::to_string(files) + " page files present");
  }
  return store;
}

std::unique_ptr<SnapshotStore> SnapshotStore::open_live(
    const fs::path& root, std::unique_ptr<MediaWikiClient> client) {
  std::error_code ec;
  fs::create_directories(root / "pages", ec);
  if (ec) throw Error(ErrorCode::kStoreUnavailable, "cannot create " + root.string());
  std::unique_ptr<SnapshotStore> store(
      new SnapshotStore(root, StoreMode::kLiveWithCache, std::move(client)));
  if (fs::exists(root / "manifest.json")) {
    const auto j = nlohmann::json::parse(read_file(root / "manifest.json"), nullptr, false);
    if (!j.is_discarded() && j.is_object()) store->manifest_ = manifest_from_json(j);
  } else {
    store->manifest_.source = std::string(kDefaultHost);
    store->manifest_.retrieved_at = utc_timestamp_now();
  }
  std::istringstream redirects(read_file(root / "redirects.tsv"));
  std::string line;
  while (std::getline(redirects, line)) {
    const auto tab = line.find('\t');
    if (tab == std::string::npos) continue;
    store->redirects_[resolve::normalize_title(line.substr(0, tab))] =
        resolve::normalize_title(line.substr(tab + 1));
  }
  return store;
}

Manifest SnapshotStore::manifest() const {
  std::shared_lock lock(mu_);
  return manifest_;
}

fs::path SnapshotStore::page_path(const std::string& title) const {
  return root_ / "pages" / (percent_encode(title) + ".wiki");
}

std::size_t SnapshotStore::count_page_files() const {
  std::size_t count = 0;
  std::error_code ec;
  for (fs::directory_iterator it(root_ / "pages", ec), end; !ec && it != end; it.increment(ec)) {
    if (it->is_regular_file() && it->path().extension() == ".wiki") ++count;
  }
  return count;
}

std::optional<PageLookup> SnapshotStore::cached_lookup(const std::string& title) {
  {
    std::shared_lock lock(mu_);
    if (auto it = redirects_.find(title); it != redirects_.end()) {
      return PageLookup{PageLookup::Kind::kRedirect, it->second};
    }
    if (auto it = inline_redirects_.find(title); it != inline_redirects_.end()) {
      if (it->second) return PageLookup{PageLookup::Kind::kRedirect, *it->second};
      return PageLookup{PageLookup::Kind::kContent, {}};
    }
    if (missing_.count(title)) return PageLookup{PageLookup::Kind::kMissing, {}};
  }
  const fs::path path = page_path(title);
  if (fs::exists(path)) {
    std::optional<std::string> target;
    if (auto raw = wikitext::redirect_target(read_file(path))) {
      target = resolve::normalize_title(*raw);
    }
    std::unique_lock lock(mu_);
    inline_redirects_[title] = target;
    if (target) return PageLookup{PageLookup::Kind::kRedirect, *target};
    return PageLookup{PageLookup::Kind::kContent, {}};
  }
  if (mode_ == StoreMode::kOffline) return PageLookup{PageLookup::Kind::kMissing, {}};
  return std::nullopt;
}

std::mutex& SnapshotStore::title_mutex(const std::string& title) {
  std::lock_guard lock(title_mu_);
  auto& slot = title_locks_[title];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

void SnapshotStore::write_redirects_locked() const {
  std::string out;
  for (const auto& [from, to] : redirects_) out += from + "\t" + to + "\n";
  write_file_atomic(root_ / "redirects.tsv", out);
}

void SnapshotStore::write_manifest_locked() {
  manifest_.page_count = static_cast<std::int64_t>(count_page_files());
  write_file_atomic(root_ / "manifest.json", manifest_to_json(manifest_).dump(2) + "\n");
}

void SnapshotStore::fetch_into_cache(const std::string& title) {
  std::lock_guard title_lock(title_mutex(title));
  if (cached_lookup(title)) return;
  const PageQuery query = client_->query_page(title);

  std::unique_lock lock(mu_);
  std::string terminal = resolve::normalize_title(query.title.empty() ? title : query.title);
  for (const auto& [from, to] : query.redirects) {
    redirects_[resolve::normalize_title(from)] = resolve::normalize_title(to);
  }
  if (query.redirects.empty() && terminal != title) redirects_[title] = terminal;
  if (query.missing) {
    missing_.insert(terminal);
  } else {
    write_file_atomic(page_path(terminal), query.wikitext);
    if (query.page_id > 0) manifest_.page_ids[terminal] = query.page_id;
    if (query.disambiguation) manifest_.disambiguation.insert(terminal);
  }
  write_redirects_locked();
  write_manifest_locked();
}

PageLookup SnapshotStore::lookup(const std::string& title) {
  if (auto cached = cached_lookup(title)) return *cached;
  fetch_into_cache(title);
  if (auto cached = cached_lookup(title)) return *cached;
  return PageLookup{PageLookup::Kind::kMissing, {}};
}

wikitext::RawPage SnapshotStore::read_page(const std::string& title) {
  const fs::path path = page_path(title);
  if (!fs::exists(path)) throw Error(ErrorCode::kPageMissing, title);
  wikitext::RawPage page;
  page.title = title;
  page.page_id = page_id(title);
  page.wikitext = read_file(path);
  std::shared_lock lock(mu_);
  page.retrieved_at = manifest_.retrieved_at;
  return page;
}

std::int64_t SnapshotStore::page_id(const std::string& title) const {
  std::shared_lock lock(mu_);
  if (auto it = manifest_.page_ids.find(title); it != manifest_.page_ids.end()) {
    return it->second;
  }
  return fallback_page_id(title);
}

bool SnapshotStore::is_disambiguation(const std::string& title) {
  {
    std::shared_lock lock(mu_);
    if (manifest_.disambiguation.count(title)) return true;
  }
  const fs::path path = page_path(title);
  return fs::exists(path) && wikitext::is_disambiguation(read_file(path));
}

void SnapshotStore::update_manifest(const std::function<void(Manifest&)>& edit) {
  std::unique_lock lock(mu_);
  edit(manifest_);
  write_manifest_locked();
}

// ---------------------------------------------------------------------------

wikitext::RawPage fetch_page(const std::string& title, SnapshotStore& store) {
  std::vector<std::string> seen = {title};
  std::string current = title;
  while (true) {
    const PageLookup step = store.lookup(current);
    switch (step.kind) {
      case PageLookup::Kind::kMissing:
        throw Error(ErrorCode::kPageMissing, current);
      case PageLookup::Kind::kContent:
        return store.read_page(current);
      case PageLookup::Kind::kRedirect:
        if (std::find(seen.begin(), seen.end(), step.target) != seen.end()) {
          throw Error(ErrorCode::kRedirectCycle, title + " -> " + step.target);
        }
        if (static_cast<int>(seen.size()) > kMaxRedirectHops) {
          throw Error(ErrorCode::kRedirectTooDeep, title);
        }
        seen.push_back(step.target);
        current = step.target;
        break;
    }
  }
}

Manifest build_snapshot(const std::vector<std::string>& list_titles, SnapshotStore& store,
                        const ListExpander& expand, int concurrency) {
  if (store.mode() != StoreMode::kLiveWithCache) {
    throw Error(ErrorCode::kStoreUnavailable, "build_snapshot needs a live store");
  }
  std::vector<FetchFailure> failures;
  std::vector<std::string> names;
  std::set<std::string> queued;
  std::vector<std::string> lists;
  for (const auto& raw : list_titles) {
    const std::string title = resolve::normalize_title(raw);
    lists.push_back(title);
    try {
      const wikitext::RawPage page = fetch_page(title, store);
      for (const auto& name : expand(page)) {
        std::string normalized;
        try {
          normalized = resolve::normalize_title(name);
        } catch (const Error&) {
          continue;
        }
        if (queued.insert(normalized).second) names.push_back(normalized);
      }
    } catch (const Error& e) {
      failures.push_back({title, e.what()});
    }
  }

  std::mutex failures_mu;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < names.size(); i = next++) {
      try {
        fetch_page(names[i], store);
      } catch (const Error& e) {
        std::lock_guard lock(failures_mu);
        failures.push_back({names[i], e.what()});
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int t = 0; t < std::max(1, concurrency); ++t) pool.emplace_back(worker);
  }

  std::sort(failures.begin(), failures.end(),
            [](const FetchFailure& a, const FetchFailure& b) { return a.title < b.title; });
  store.update_manifest([&](Manifest& m) {
    m.retrieved_at = utc_timestamp_now();
    m.lists = lists;
    m.failures = failures;
  });
  return store.manifest();
}

}  // namespace nevo::corpus
