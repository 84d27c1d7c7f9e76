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

#ifndef NEVO_CORPUS_H_
#define NEVO_CORPUS_H_

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "nevo/wikitext.h"

namespace nevo::corpus {

// ---------------------------------------------------------------------------
// Network access
// ---------------------------------------------------------------------------

// While any guard is alive, every outgoing request fails with
// Error(kNetworkBlocked) and is counted. Used to prove offline runs hermetic.
class NetworkGuard {
 public:
  NetworkGuard();
  ~NetworkGuard();
  NetworkGuard(const NetworkGuard&) = delete;
  NetworkGuard& operator=(const NetworkGuard&) = delete;

  static bool active();
};

// Total requests attempted by any client in this process, blocked or not.
std::uint64_t network_operations();

struct HttpResponse {
  int status = 0;
  std::string body;
};

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  // Performs a GET for `target` (path plus query). Throws on transport
  // failure.
  virtual HttpResponse get(const std::string& target) = 0;
};

// HTTPS transport backed by cpp-httplib.
std::unique_ptr<HttpTransport> make_https_transport(const std::string& host,
                                                    const std::string& user_agent);

struct ClientOptions {
  std::string api_path = "/w/api.php";
  std::chrono::milliseconds min_interval{200};
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{1000};
  std::function<void(std::chrono::milliseconds)> sleep;  // defaults to a real sleep
};

inline constexpr std::string_view kDefaultHost = "en.wikipedia.org";
inline constexpr std::string_view kUserAgent =
    "nevo/1.0 (name evolution extraction; offline snapshot builder)";

// Outcome of one page query with redirects followed server side.
struct PageQuery {
  std::vector<std::pair<std::string, std::string>> redirects;  // from -> to
  std::string title;  // terminal title
  bool missing = false;
  std::int64_t page_id = 0;
  std::string wikitext;
  bool disambiguation = false;
};

// Minimal MediaWiki Action API client: current wikitext of one title, its
// redirect hops and missing-page reports. Enforces a minimum interval
// between requests and retries with exponential backoff.
class MediaWikiClient {
 public:
  MediaWikiClient(std::unique_ptr<HttpTransport> transport, ClientOptions options = {});

  PageQuery query_page(const std::string& title);

 private:
  HttpResponse send(const std::string& target);

  std::unique_ptr<HttpTransport> transport_;
  ClientOptions options_;
  std::mutex pace_mu_;
  std::chrono::steady_clock::time_point next_slot_{};
};

// Percent-encodes everything except unreserved characters (A-Z a-z 0-9 - _ . ~).
std::string percent_encode(std::string_view text);
std::string percent_decode(std::string_view text);

// ---------------------------------------------------------------------------
// Snapshot store
// ---------------------------------------------------------------------------

enum class StoreMode { kOffline, kLiveWithCache };

struct FetchFailure {
  std::string title;
  std::string error;
};

struct Manifest {
  std::string source;
  std::string retrieved_at;
  std::int64_t page_count = 0;
  std::vector<std::string> lists;
  std::map<std::string, std::int64_t> page_ids;
  std::set<std::string> disambiguation;
  std::vector<FetchFailure> failures;

  // Identifies the snapshot in exported records.
  std::string snapshot_id() const;
};

struct PageLookup {
  enum class Kind { kMissing, kRedirect, kContent };
  Kind kind = Kind::kMissing;
  std::string target;  // redirect target for kRedirect
};

// On-disk layout:
//   redirects.tsv          from-title TAB to-title, UTF-8, LF
//   pages/<title>.wiki     raw wikitext, title percent-encoded
//   manifest.json          source, retrieved_at, page_count (+ optional extras)
//
// Reads may run concurrently. In live mode misses go to the API and the
// answers are written back; writes for one title are serialized.
class SnapshotStore {
 public:
  // Offline: the directory and its manifest must exist. Throws
  // Error(kStoreUnavailable).
  static std::unique_ptr<SnapshotStore> open_offline(const std::filesystem::path& root);
  // Live: creates the layout if needed and reuses whatever is cached.
  static std::unique_ptr<SnapshotStore> open_live(const std::filesystem::path& root,
                                                  std::unique_ptr<MediaWikiClient> client);

  SnapshotStore(const SnapshotStore&) = delete;
  SnapshotStore& operator=(const SnapshotStore&) = delete;

  StoreMode mode() const { return mode_; }
  const std::filesystem::path& root() const { return root_; }
  Manifest manifest() const;

  // One resolution step for a normalized title.
  PageLookup lookup(const std::string& title);

  // Content page bytes. Throws Error(kPageMissing).
  wikitext::RawPage read_page(const std::string& title);

  std::int64_t page_id(const std::string& title) const;
  bool is_disambiguation(const std::string& title);

  std::size_t count_page_files() const;

  // Recounts page files and rewrites manifest.json.
  void update_manifest(const std::function<void(Manifest&)>& edit);

 private:
  SnapshotStore(std::filesystem::path root, StoreMode mode,
                std::unique_ptr<MediaWikiClient> client);

  std::filesystem::path page_path(const std::string& title) const;
  std::optional<PageLookup> cached_lookup(const std::string& title);
  void fetch_into_cache(const std::string& title);
  void write_redirects_locked() const;
  void write_manifest_locked();
  std::mutex& title_mutex(const std::string& title);

  std::filesystem::path root_;
  StoreMode mode_;
  std::unique_ptr<MediaWikiClient> client_;

  mutable std::shared_mutex mu_;
  Manifest manifest_;
  std::map<std::string, std::string> redirects_;
  std::set<std::string> missing_;
  std::map<std::string, std::optional<std::string>> inline_redirects_;

  std::mutex title_mu_;
  std::map<std::string, std::unique_ptr<std::mutex>> title_locks_;
};

// Follows redirects (at most 8 hops) to a content page. Throws
// Error(kPageMissing), Error(kRedirectCycle) or Error(kRedirectTooDeep).
wikitext::RawPage fetch_page(const std::string& title, SnapshotStore& store);

// Names (entity articles) to fetch for one list page.
using ListExpander = std::function<std::vector<std::string>(const wikitext::RawPage&)>;

// Fetches every list page, then every name the expander returns for it,
// with up to `concurrency` requests in flight. Per-page failures are
// recorded in the manifest instead of aborting. Requires live mode.
Manifest build_snapshot(const std::vector<std::string>& list_titles, SnapshotStore& store,
                        const ListExpander& expand, int concurrency = 2);

std::string utc_timestamp_now();

}  // namespace nevo::corpus

#endif  // NEVO_CORPUS_H_
