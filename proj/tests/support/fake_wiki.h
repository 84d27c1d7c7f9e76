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

#ifndef NEVO_TESTS_SUPPORT_FAKE_WIKI_H_
#define NEVO_TESTS_SUPPORT_FAKE_WIKI_H_

#include <cstdint>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "nevo/corpus.h"

namespace nevo::testing {

// In-memory MediaWiki answering the query API the way the live site does
// (formatversion=2, one redirect hop).
class FakeWiki {
 public:
  FakeWiki();

  void add_page(const std::string& title, const std::string& wikitext, std::int64_t page_id,
                bool disambiguation = false);
  void add_redirect(const std::string& from, const std::string& to);
  // Statuses returned, in order, before normal answers resume.
  void script_statuses(std::vector<int> statuses);

  std::unique_ptr<corpus::HttpTransport> transport() const;
  int requests() const;
  std::vector<std::string> requested_titles() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

// Client options with no pacing and a recorded, non-blocking sleep.
corpus::ClientOptions instant_options(std::vector<std::chrono::milliseconds>* sleeps = nullptr);

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

struct StoreLayout {
  std::map<std::string, std::string> pages;  // title -> wikitext
  std::vector<std::pair<std::string, std::string>> redirects;
  std::vector<std::string> lists;
  std::map<std::string, std::int64_t> page_ids;
  std::string source = "test";
  std::string retrieved_at = "2014-02-13T00:00:00Z";
};

// Lays out an offline snapshot store under `root`.
void write_store(const std::filesystem::path& root, const StoreLayout& layout);

std::string read_file(const std::filesystem::path& path);

}  // namespace nevo::testing

#endif  // NEVO_TESTS_SUPPORT_FAKE_WIKI_H_
