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

#ifndef NEVO_CLI_H_
#define NEVO_CLI_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nevo/corpus.h"
#include "nevo/textscan.h"

namespace nevo::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitStore = 3,
};

// Stage file names inside the work directory.
inline constexpr const char* kChainsFile = "chains.jsonl";
inline constexpr const char* kRejectsFile = "rejects.jsonl";
inline constexpr const char* kResolvedFile = "resolved.jsonl";
inline constexpr const char* kScansFile = "scans.jsonl";
inline constexpr const char* kReportTextFile = "report.txt";
inline constexpr const char* kReportJsonFile = "report.json";
inline constexpr const char* kKbFile = "kb.jsonl";

struct PipelineConfig {
  std::filesystem::path snapshot_root;
  bool offline = false;
  std::vector<std::string> list_titles;  // empty: take the manifest's lists
  int context_sentences = 1;
  textscan::SignalLexicon signal_lexicon = textscan::SignalLexicon::defaults();
  std::vector<std::int64_t> histogram_edges;
  std::filesystem::path work_dir = ".";
  std::filesystem::path kb_out;      // default: <work>/kb.jsonl
  std::filesystem::path report_out;  // default: <work>/report.json
  int jobs = 1;
  int fetch_concurrency = 2;
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

// Hooks for embedding and tests.
struct RunOptions {
  // Builds the transport for live mode; defaults to HTTPS against Wikipedia.
  std::function<std::unique_ptr<corpus::HttpTransport>()> transport_factory;
  corpus::ClientOptions client_options;
  // Environment lookup; defaults to std::getenv.
  std::function<std::optional<std::string>(const std::string&)> getenv;
};

// Opens the store the config asks for. Throws Error(kStoreUnavailable).
std::unique_ptr<corpus::SnapshotStore> open_store(const PipelineConfig& config,
                                                  const RunOptions& options = {});

int cmd_parse_lists(const PipelineConfig& config, corpus::SnapshotStore& store, Streams io);
int cmd_resolve(const PipelineConfig& config, corpus::SnapshotStore& store, Streams io);
int cmd_scan(const PipelineConfig& config, corpus::SnapshotStore& store, Streams io);
int cmd_report(const PipelineConfig& config, Streams io);
int cmd_build_snapshot(const PipelineConfig& config, corpus::SnapshotStore& store, Streams io);

// Entry point: `nevo <command> [flags]`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const RunOptions& options = {});

}  // namespace nevo::cli

#endif  // NEVO_CLI_H_
