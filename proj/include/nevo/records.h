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

#ifndef NEVO_RECORDS_H_
#define NEVO_RECORDS_H_

// JSON forms of the pipeline's stage handoff records. Stage files are JSON
// Lines whose first line is a header {"schema": ..., "version": ...}.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "nevo/chains.h"
#include "nevo/resolve.h"
#include "nevo/stats.h"
#include "nevo/textscan.h"

namespace nevo::records {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kChainsSchema = "nevo.chains";
inline constexpr std::string_view kRejectsSchema = "nevo.rejects";
inline constexpr std::string_view kResolvedSchema = "nevo.resolved";
inline constexpr std::string_view kScansSchema = "nevo.scans";

Json to_json(const chains::PartialDate& date);
chains::PartialDate date_from_json(const Json& j);

Json to_json(const chains::NameChange& change);
chains::NameChange change_from_json(const Json& j);

Json to_json(const chains::EntityChain& chain);
chains::EntityChain chain_from_json(const Json& j);

Json to_json(const resolve::ArticleRef& ref);
resolve::ArticleRef article_from_json(const Json& j);

Json to_json(const resolve::ResolvedEntity& entity);
resolve::ResolvedEntity resolved_from_json(const Json& j);

Json to_json(const stats::ScanRecord& record);
stats::ScanRecord scan_from_json(const Json& j);

// Compact single-line dump; invalid UTF-8 is replaced, never thrown on.
std::string dump_line(const Json& j);

struct JsonLines {
  Json header;
  std::vector<Json> rows;
};

// Header gets "schema" and "version" prepended to `meta`.
void write_json_lines(const std::filesystem::path& path, std::string_view schema,
                      const Json& meta, const std::vector<Json>& rows);

// Throws Error(kBadFormat) on a missing file, a schema or version mismatch
// or a malformed line.
JsonLines read_json_lines(const std::filesystem::path& path, std::string_view schema);

}  // namespace nevo::records

#endif  // NEVO_RECORDS_H_
