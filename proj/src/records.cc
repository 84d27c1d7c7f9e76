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

#include "nevo/records.h"

#include <fstream>

#include "nevo/error.h"

namespace nevo::records {

Json to_json(const chains::PartialDate& date) {
  Json j;
  j["year"] = date.year;
  if (date.month) j["month"] = *date.month;
  if (date.day) j["day"] = *date.day;
  j["approximate"] = date.approximate;
  return j;
}

chains::PartialDate date_from_json(const Json& j) {
  chains::PartialDate date;
  date.year = j.at("year").get<int>();
  if (j.contains("month")) date.month = j["month"].get<int>();
  if (j.contains("day")) date.day = j["day"].get<int>();
  date.approximate = j.value("approximate", false);
  return date;
}

Json to_json(const chains::NameChange& change) {
  Json j;
  j["preceding"] = change.preceding;
  j["succeeding"] = change.succeeding;
  j["date"] = change.date ? to_json(*change.date) : Json(nullptr);
  j["source_list"] = change.source_list;
  j["item_index"] = change.item_index;
  return j;
}

chains::NameChange change_from_json(const Json& j) {
  chains::NameChange change;
  change.preceding = j.at("preceding").get<std::string>();
  change.succeeding = j.at("succeeding").get<std::string>();
  if (!j.at("date").is_null()) change.date = date_from_json(j["date"]);
  change.source_list = j.value("source_list", "");
  change.item_index = j.value("item_index", 0);
  return change;
}

Json to_json(const chains::EntityChain& chain) {
  Json j;
  j["id"] = chain.id;
  j["names"] = chain.names;
  j["changes"] = Json::array();
  for (const auto& change : chain.changes) j["changes"].push_back(to_json(change));
  j["sources"] = chain.sources;
  return j;
}

chains::EntityChain chain_from_json(const Json& j) {
  chains::EntityChain chain;
  chain.id = j.at("id").get<std::string>();
  chain.names = j.at("names").get<std::vector<std::string>>();
  for (const auto& change : j.at("changes")) chain.changes.push_back(change_from_json(change));
  chain.sources = j.value("sources", std::vector<std::string>{});
  return chain;
}

Json to_json(const resolve::ArticleRef& ref) {
  Json j;
  j["title"] = ref.title;
  j["page_id"] = ref.page_id;
  j["resolved_from"] = ref.resolved_from;
  j["redirect_chain"] = ref.redirect_chain;
  j["also_resolved_from"] = ref.also_resolved_from;
  return j;
}

resolve::ArticleRef article_from_json(const Json& j) {
  resolve::ArticleRef ref;
  ref.title = j.at("title").get<std::string>();
  ref.page_id = j.at("page_id").get<std::int64_t>();
  ref.resolved_from = j.value("resolved_from", "");
  ref.redirect_chain = j.value("redirect_chain", std::vector<std::string>{});
  ref.also_resolved_from = j.value("also_resolved_from", std::vector<std::string>{});
  return ref;
}

Json to_json(const resolve::ResolvedEntity& entity) {
  Json j;
  j["chain"] = to_json(entity.chain);
  j["articles"] = Json::array();
  for (const auto& ref : entity.articles) j["articles"].push_back(to_json(ref));
  j["unresolved"] = Json::array();
  for (const auto& u : entity.unresolved) {
    j["unresolved"].push_back(
        {{"name", u.name}, {"reason", u.reason}, {"candidates", u.candidates}});
  }
  return j;
}

resolve::ResolvedEntity resolved_from_json(const Json& j) {
  resolve::ResolvedEntity entity;
  entity.chain = chain_from_json(j.at("chain"));
  for (const auto& ref : j.at("articles")) entity.articles.push_back(article_from_json(ref));
  for (const auto& u : j.at("unresolved")) {
    entity.unresolved.push_back({u.at("name").get<std::string>(),
                                 u.at("reason").get<std::string>(),
                                 u.value("candidates", std::vector<std::string>{})});
  }
  return entity;
}

namespace {

Json window_json(const std::optional<textscan::Window>& window) {
  if (!window) return nullptr;
  return Json::array({window->first, window->last});
}

textscan::Window window_from_json(const Json& j) {
  return {j.at(0).get<int>(), j.at(1).get<int>()};
}

}  // namespace

Json to_json(const stats::ScanRecord& record) {
  const auto& scan = record.scan;
  Json j;
  j["entity_id"] = record.entity_id;
  j["change"] = to_json(scan.change);
  j["article"] = to_json(scan.article);
  j["document_index"] = scan.document_index;
  j["occurrences"] = Json::object();
  for (const auto& set : scan.occurrences) {
    j["occurrences"][std::string(textscan::component_name(set.component))] = set.sentence_indices;
  }
  j["distance"] = scan.distance ? Json(*scan.distance) : Json(nullptr);
  j["window"] = window_json(scan.window);
  if (record.excerpt) {
    j["excerpt"] = {{"range", window_json(record.excerpt->sentence_range)},
                    {"text", record.excerpt->text},
                    {"signal_words", record.excerpt->signal_words}};
  } else {
    j["excerpt"] = nullptr;
  }
  return j;
}

stats::ScanRecord scan_from_json(const Json& j) {
  stats::ScanRecord record;
  record.entity_id = j.at("entity_id").get<std::string>();
  auto& scan = record.scan;
  scan.change = change_from_json(j.at("change"));
  scan.article = article_from_json(j.at("article"));
  scan.document_index = j.value("document_index", std::size_t{0});
  const std::array<textscan::Component, 3> components = {
      textscan::Component::kPreceding, textscan::Component::kSucceeding,
      textscan::Component::kDate};
  for (std::size_t i = 0; i < components.size(); ++i) {
    scan.occurrences[i].component = components[i];
    scan.occurrences[i].sentence_indices =
        j.at("occurrences").at(std::string(textscan::component_name(components[i]))).get<std::vector<int>>();
  }
  if (!j.at("distance").is_null()) scan.distance = j["distance"].get<int>();
  if (!j.at("window").is_null()) scan.window = window_from_json(j["window"]);
  if (!j.at("excerpt").is_null()) {
    const auto& e = j["excerpt"];
    record.excerpt = textscan::Excerpt{window_from_json(e.at("range")),
                                       e.at("text").get<std::string>(),
                                       e.at("signal_words").get<std::vector<std::string>>()};
  }
  return record;
}

std::string dump_line(const Json& j) {
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

void write_json_lines(const std::filesystem::path& path, std::string_view schema,
                      const Json& meta, const std::vector<Json>& rows) {
  Json header;
  header["schema"] = schema;
  header["version"] = kSchemaVersion;
  for (const auto& [key, value] : meta.items()) header[key] = value;
  std::string out = dump_line(header) + "\n";
  for (const auto& row : rows) out += dump_line(row) + "\n";
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw Error(ErrorCode::kBadFormat, "cannot write " + path.string());
}

JsonLines read_json_lines(const std::filesystem::path& path, std::string_view schema) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::kBadFormat, "cannot read " + path.string());
  JsonLines result;
  std::string line;
  bool first = true;
  while (std::getline(file, line)) {
    if (line.empty()) continue;
    Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::kBadFormat, "malformed line in " + path.string());
    if (first) {
      if (j.value("schema", "") != schema || j.value("version", 0) != kSchemaVersion) {
        throw Error(ErrorCode::kBadFormat,
                    path.string() + " is not a " + std::string(schema) + " v" +
                        std::to_string(kSchemaVersion) + " file");
      }
      result.header = std::move(j);
      first = false;
      continue;
    }
    result.rows.push_back(std::move(j));
  }
  if (first) throw Error(ErrorCode::kBadFormat, path.string() + " has no header");
  return result;
}

}  // namespace nevo::records
