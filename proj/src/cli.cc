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

#include "nevo/cli.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "nevo/chains.h"
#include "nevo/error.h"
#include "nevo/records.h"
#include "nevo/resolve.h"
#include "nevo/stats.h"
#include "nevo/unicode.h"
#include "nevo/wikitext.h"

namespace nevo::cli {
namespace fs = std::filesystem;
using records::Json;

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kStoreUnavailable:
    case ErrorCode::kPageMissing:
    case ErrorCode::kNetworkError:
    case ErrorCode::kRateLimited:
    case ErrorCode::kNetworkBlocked:
    case ErrorCode::kRedirectCycle:
    case ErrorCode::kRedirectTooDeep:
      return kExitStore;
    case ErrorCode::kBadEdges:
      return kExitUsage;
    default:
      return kExitData;
  }
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kBadFormat, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::kBadFormat, "cannot write " + path.string());
}

fs::path stage_path(const PipelineConfig& config, const char* name) {
  return config.work_dir / name;
}

// Custom edges are widened to start at 0 and end open so every distance
// lands in a bucket.
std::vector<std::int64_t> covering_edges(std::vector<std::int64_t> edges) {
  if (edges.empty()) return stats::default_edges();
  if (edges.front() > 0) edges.insert(edges.begin(), 0);
  if (edges.back() != stats::kOpenEnd) edges.push_back(stats::kOpenEnd);
  return edges;
}

std::vector<std::string> list_titles_for(const PipelineConfig& config,
                                         const corpus::SnapshotStore& store) {
  std::vector<std::string> titles =
      config.list_titles.empty() ? store.manifest().lists : config.list_titles;
  if (titles.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no list titles given and none in the manifest");
  }
  return titles;
}

template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& body) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::unique_ptr<corpus::SnapshotStore> open_store(const PipelineConfig& config,
                                                  const RunOptions& options) {
  if (config.offline) return corpus::SnapshotStore::open_offline(config.snapshot_root);
  auto transport = options.transport_factory
                       ? options.transport_factory()
                       : corpus::make_https_transport(std::string(corpus::kDefaultHost),
                                                      std::string(corpus::kUserAgent));
  auto client =
      std::make_unique<corpus::MediaWikiClient>(std::move(transport), options.client_options);
  return corpus::SnapshotStore::open_live(config.snapshot_root, std::move(client));
}

int cmd_parse_lists(const PipelineConfig& config, corpus::SnapshotStore& store, Streams io) {
  std::vector<chains::EntityChain> parsed;
  std::vector<Json> rejects;
  Json lists = Json::array();
  for (const auto& raw_title : list_titles_for(config, store)) {
    const std::string title = resolve::normalize_title(raw_title);
    const wikitext::RawPage page = corpus::fetch_page(title, store);
    const auto items = wikitext::extract_list_items(page);
    int chain_count = 0;
    int reject_count = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
      try {
        parsed.push_back(chains::parse_chain_item(items[i].text, page.title, static_cast<int>(i)));
        ++chain_count;
      } catch (const Error& e) {
        ++reject_count;
        Json reject;
        reject["source_list"] = page.title;
        reject["item_index"] = i;
        reject["depth"] = items[i].depth;
        reject["item"] = items[i].text;
        reject["reason"] = error_name(e.code());
        rejects.push_back(std::move(reject));
      }
    }
    lists.push_back({{"title", page.title},
                     {"items", items.size()},
                     {"chains", chain_count},
                     {"rejects", reject_count}});
    io.err << "parse-lists: " << page.title << ": " << items.size() << " items, "
           << chain_count << " chains, " << reject_count << " rejected\n";
  }

  const chains::DedupResult dedup = chains::dedup_chains(parsed);
  if (dedup.merged > 0) {
    io.err << "parse-lists: merged " << dedup.merged << " redundant chain(s)\n";
  }
  Json conflicts = Json::array();
  for (const auto& c : dedup.conflicts) {
    io.err << "parse-lists: ConflictingDates for " << c.preceding << " -> " << c.succeeding
           << ": kept " << chains::format_date(c.kept) << ", dropped "
           << chains::format_date(c.dropped) << " from " << c.dropped_source << "\n";
    conflicts.push_back({{"chain_id", c.chain_id},
                         {"preceding", c.preceding},
                         {"succeeding", c.succeeding},
                         {"kept", records::to_json(c.kept)},
                         {"dropped", records::to_json(c.dropped)},
                         {"dropped_source", c.dropped_source}});
  }

  fs::create_directories(config.work_dir);
  std::vector<Json> rows;
  for (const auto& chain : dedup.chains) rows.push_back(records::to_json(chain));
  Json meta;
  meta["lists"] = lists;
  meta["parsed"] = parsed.size();
  meta["merged"] = dedup.merged;
  meta["entities"] = dedup.chains.size();
  meta["conflicts"] = conflicts;
  records::write_json_lines(stage_path(config, kChainsFile), records::kChainsSchema, meta, rows);
  records::write_json_lines(stage_path(config, kRejectsFile), records::kRejectsSchema,
                            Json::object(), rejects);
  io.err << "parse-lists: " << dedup.chains.size() << " entities written\n";
  if (dedup.chains.empty()) {
    io.err << "parse-lists: no chains parsed\n";
    return kExitData;
  }
  return kExitOk;
}

int cmd_resolve(const PipelineConfig& config, corpus::SnapshotStore& store, Streams io) {
  const auto input = records::read_json_lines(stage_path(config, kChainsFile),
                                              records::kChainsSchema);
  std::vector<Json> rows;
  int resolved = 0;
  int articles = 0;
  int unresolved_names = 0;
  int disambiguation = 0;
  int redirect_errors = 0;
  for (const auto& row : input.rows) {
    const auto entity = resolve::resolve_entity(records::chain_from_json(row), store);
    if (entity.resolved()) ++resolved;
    articles += static_cast<int>(entity.articles.size());
    for (const auto& u : entity.unresolved) {
      ++unresolved_names;
      if (u.reason == "Disambiguation") ++disambiguation;
      if (u.reason == "RedirectCycle" || u.reason == "RedirectTooDeep") {
        ++redirect_errors;
        io.err << "resolve: " << u.reason << " for '" << u.name << "'\n";
      }
    }
    rows.push_back(records::to_json(entity));
  }
  Json meta;
  meta["entities"] = input.rows.size();
  meta["resolved"] = resolved;
  meta["unresolved_entities"] = static_cast<int>(input.rows.size()) - resolved;
  meta["articles"] = articles;
  meta["unresolved_names"] = unresolved_names;
  meta["disambiguation_names"] = disambiguation;
  meta["redirect_errors"] = redirect_errors;
  records::write_json_lines(stage_path(config, kResolvedFile), records::kResolvedSchema, meta,
                            rows);
  io.err << "resolve: " << resolved << " of " << input.rows.size() << " entities resolved, "
         << articles << " articles, " << unresolved_names << " unresolved names ("
         << disambiguation << " disambiguation)\n";
  return kExitOk;
}

int cmd_scan(const PipelineConfig& config, corpus::SnapshotStore& store, Streams io) {
  if (config.context_sentences < 0) throw Error(ErrorCode::kOutOfRange, "--context must be >= 0");
  const auto input = records::read_json_lines(stage_path(config, kResolvedFile),
                                              records::kResolvedSchema);
  std::vector<resolve::ResolvedEntity> entities;
  for (const auto& row : input.rows) entities.push_back(records::resolved_from_json(row));

  struct EntityResult {
    std::vector<stats::ScanRecord> scans;
    std::vector<Json> skipped;
  };
  std::vector<EntityResult> results(entities.size());

  parallel_for(entities.size(), config.jobs, [&](std::size_t index) {
    const auto& entity = entities[index];
    EntityResult& result = results[index];
    auto skip = [&](const chains::NameChange* change, const std::string& reason,
                    const std::string& detail) {
      Json s;
      s["entity_id"] = entity.chain.id;
      s["preceding"] = change ? change->preceding : "";
      s["succeeding"] = change ? change->succeeding : "";
      s["reason"] = reason;
      s["detail"] = detail;
      result.skipped.push_back(std::move(s));
    };

    std::vector<textscan::Document> docs;
    for (const auto& article : entity.articles) {
      try {
        const auto page = corpus::fetch_page(article.title, store);
        docs.emplace_back(article, wikitext::strip_markup(page).text);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kStoreUnavailable || e.code() == ErrorCode::kNetworkBlocked) {
          throw;
        }
        skip(nullptr, std::string(error_name(e.code())), article.title);
      }
    }
    for (const auto& change : entity.chain.changes) {
      if (!change.date) continue;
      if (docs.empty()) {
        skip(&change, entity.articles.empty() ? "NoArticles" : "NoDocuments", "");
        continue;
      }
      stats::ScanRecord record;
      record.entity_id = entity.chain.id;
      record.scan = textscan::scan_change(change, docs);
      if (record.scan.distance) {
        record.excerpt = textscan::extract_excerpt(docs[record.scan.document_index], record.scan,
                                                   config.context_sentences,
                                                   config.signal_lexicon);
      }
      result.scans.push_back(std::move(record));
    }
  });

  std::vector<Json> rows;
  Json skipped = Json::array();
  int with_distance = 0;
  for (const auto& result : results) {
    for (const auto& record : result.scans) {
      if (record.scan.distance) ++with_distance;
      rows.push_back(records::to_json(record));
    }
    for (const auto& s : result.skipped) {
      io.err << "scan: skipped " << s["preceding"].get<std::string>() << " -> "
             << s["succeeding"].get<std::string>() << " (" << s["reason"].get<std::string>()
             << (s["detail"].get<std::string>().empty() ? "" : ": " + s["detail"].get<std::string>())
             << ")\n";
      skipped.push_back(s);
    }
  }
  Json meta;
  meta["snapshot_id"] = store.manifest().snapshot_id();
  meta["context"] = config.context_sentences;
  meta["scanned"] = rows.size();
  meta["with_distance"] = with_distance;
  meta["skipped"] = skipped;
  records::write_json_lines(stage_path(config, kScansFile), records::kScansSchema, meta, rows);
  io.err << "scan: " << rows.size() << " dated changes scanned, " << with_distance
         << " mentioned with all three components\n";
  return kExitOk;
}

int cmd_report(const PipelineConfig& config, Streams io) {
  const auto chain_lines = records::read_json_lines(stage_path(config, kChainsFile),
                                                    records::kChainsSchema);
  const auto resolved_lines = records::read_json_lines(stage_path(config, kResolvedFile),
                                                       records::kResolvedSchema);
  const auto scan_lines = records::read_json_lines(stage_path(config, kScansFile),
                                                   records::kScansSchema);
  std::vector<chains::EntityChain> chain_list;
  for (const auto& row : chain_lines.rows) chain_list.push_back(records::chain_from_json(row));
  if (chain_list.empty()) {
    io.err << "report: EmptyInput: no chains to report on\n";
    return kExitData;
  }
  std::vector<resolve::ResolvedEntity> resolved;
  for (const auto& row : resolved_lines.rows) resolved.push_back(records::resolved_from_json(row));
  std::vector<stats::ScanRecord> scans;
  for (const auto& row : scan_lines.rows) scans.push_back(records::scan_from_json(row));

  const auto edges = covering_edges(config.histogram_edges);
  const stats::StatsReport report = stats::aggregate(chain_list, resolved, scans, edges);
  const std::string text = stats::render_report(report, stats::ReportFormat::kText);
  io.out << text;
  write_text_file(stage_path(config, kReportTextFile), text);
  write_text_file(config.report_out.empty() ? stage_path(config, kReportJsonFile)
                                            : config.report_out,
                  stats::render_report(report, stats::ReportFormat::kStructured));

  const std::string snapshot_id = scan_lines.header.value("snapshot_id", "");
  const auto kb = stats::export_kb(scans, snapshot_id);
  write_text_file(config.kb_out.empty() ? stage_path(config, kKbFile) : config.kb_out,
                  stats::render_kb(kb));
  io.err << "report: " << kb.size() << " knowledge-base records\n";
  return kExitOk;
}

int cmd_build_snapshot(const PipelineConfig& config, corpus::SnapshotStore& store, Streams io) {
  if (config.list_titles.empty()) throw Error(ErrorCode::kEmptyInput, "--lists is required");
  auto expand = [](const wikitext::RawPage& page) {
    std::vector<std::string> names;
    for (const auto& item : wikitext::extract_list_items(page)) {
      try {
        const auto chain = chains::parse_chain_item(item.text, page.title);
        names.insert(names.end(), chain.names.begin(), chain.names.end());
      } catch (const Error&) {
      }
    }
    return names;
  };
  const auto manifest =
      corpus::build_snapshot(config.list_titles, store, expand, config.fetch_concurrency);
  for (const auto& failure : manifest.failures) {
    io.err << "build-snapshot: " << failure.title << ": " << failure.error << "\n";
  }
  io.err << "build-snapshot: " << manifest.page_count << " pages in " << store.root().string()
         << "\n";
  return kExitOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const RunOptions& options) {
  CLI::App app{"Extracts entity name evolutions from Wikipedia list pages and articles.", "nevo"};
  app.require_subcommand(1);

  PipelineConfig config;
  config.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string snapshot;
  std::vector<std::string> lists;
  std::string signal_words;
  std::string hist_edges;
  std::string work = ".";
  std::string kb_out;
  std::string report_out;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--snapshot", snapshot, "Snapshot store root (default: $NEVO_SNAPSHOT)");
    cmd->add_flag("--offline", config.offline, "Serve every read from the snapshot only");
    cmd->add_option("--lists", lists, "List-page titles, or one file with a title per line");
    cmd->add_option("--context", config.context_sentences, "Context sentences around excerpts")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--signal-words", signal_words, "Signal lexicon file");
    cmd->add_option("--hist-edges", hist_edges, "Histogram edges, e.g. 0,1,3,10,50,inf");
    cmd->add_option("--kb-out", kb_out, "Knowledge-base output (JSON Lines)");
    cmd->add_option("--report-out", report_out, "Structured report output (JSON)");
    cmd->add_option("--jobs", config.jobs, "Scan worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--work", work, "Directory for stage files");
  };
  std::map<std::string, CLI::App*> commands;
  for (const char* name : {"parse-lists", "resolve", "scan", "report", "run-all",
                           "build-snapshot"}) {
    commands[name] = app.add_subcommand(name);
    add_common(commands[name]);
  }
  commands["parse-lists"]->description("Parse name-change chains from list pages");
  commands["resolve"]->description("Resolve chain names to articles");
  commands["scan"]->description("Find the three change components in the articles");
  commands["report"]->description("Aggregate statistics and export the knowledge base");
  commands["run-all"]->description("parse-lists, resolve, scan and report in sequence");
  commands["build-snapshot"]->description("Fetch list pages and their articles into a store");

  std::vector<const char*> argv = {"nevo"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    auto getenv = options.getenv ? options.getenv
                                 : [](const std::string& key) -> std::optional<std::string> {
      const char* value = std::getenv(key.c_str());
      return value ? std::optional<std::string>(value) : std::nullopt;
    };
    if (snapshot.empty()) snapshot = getenv("NEVO_SNAPSHOT").value_or("");
    config.snapshot_root = snapshot;
    config.work_dir = work;
    config.kb_out = kb_out;
    config.report_out = report_out;
    if (lists.size() == 1 && fs::is_regular_file(lists.front())) {
      std::istringstream file(read_text_file(lists.front()));
      std::string line;
      lists.clear();
      while (std::getline(file, line)) {
        const std::string title(unicode::trim(line));
        if (!title.empty() && title[0] != '#') lists.push_back(title);
      }
    }
    config.list_titles = lists;
    if (!signal_words.empty()) {
      config.signal_lexicon = textscan::SignalLexicon::parse(read_text_file(signal_words));
    }
    if (!hist_edges.empty()) {
      config.histogram_edges = stats::parse_edges(hist_edges);
      stats::histogram({}, config.histogram_edges);
    }

    CLI::App* chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();
    Streams io{out, err};
    if (name == "report") return cmd_report(config, io);

    if (config.snapshot_root.empty()) {
      err << "nevo: no snapshot root; pass --snapshot or set NEVO_SNAPSHOT\n";
      return kExitUsage;
    }
    if (name == "build-snapshot" && config.offline) {
      err << "nevo: build-snapshot needs live mode\n";
      return kExitUsage;
    }
    auto store = open_store(config, options);
    if (name == "parse-lists") return cmd_parse_lists(config, *store, io);
    if (name == "resolve") return cmd_resolve(config, *store, io);
    if (name == "scan") return cmd_scan(config, *store, io);
    if (name == "build-snapshot") return cmd_build_snapshot(config, *store, io);
    for (auto stage : {cmd_parse_lists, cmd_resolve, cmd_scan}) {
      if (const int code = stage(config, *store, io); code != kExitOk) return code;
    }
    return cmd_report(config, io);
  } catch (const Error& e) {
    err << "nevo: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "nevo: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace nevo::cli
