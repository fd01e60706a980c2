#include "vamci/ingest/manifest.hpp"

#include <json.hpp>
#include <set>

#include "vamci/core/error.hpp"
#include "vamci/core/log.hpp"
#include "vamci/ingest/vaef.hpp"

namespace vamci::ingest {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void warn_unknown_keys(const json& obj, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!known.contains(key)) warn("ignoring unknown field '" + where + key + "'");
  }
}

const json& require(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError("missing required field '" + where + key + "'");
  return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_string()) throw ParseError("field '" + where + key + "' must be a string");
  return v.get<std::string>();
}

long long require_int(const json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_number_integer()) throw ParseError("field '" + where + key + "' must be an integer");
  return v.get<long long>();
}

int moca_field(const json& moca, const char* key) {
  const auto v = require_int(moca, key, "moca.");
  if (v < 0 || v > 100) {
    throw ValidationError("moca." + std::string(key) + " = " + std::to_string(v) + " out of range");
  }
  return static_cast<int>(v);
}

Command parse_command(const json& c, std::size_t index) {
  const std::string where = "commands[" + std::to_string(index) + "].";
  if (!c.is_object()) throw ParseError("'" + where.substr(0, where.size() - 1) + "' must be an object");
  warn_unknown_keys(c, {"command_id", "speaker", "transcript", "status", "embedding_row", "category"},
                    where);
  Command cmd;
  cmd.command_id = require_string(c, "command_id", where);
  const auto speaker = require_string(c, "speaker", where);
  const auto parsed_speaker = parse_speaker(speaker);
  if (!parsed_speaker) throw ParseError("'" + where + "speaker': unknown value '" + speaker + "'");
  cmd.speaker = *parsed_speaker;
  cmd.transcript = require_string(c, "transcript", where);
  const auto status = require_string(c, "status", where);
  const auto parsed_status = parse_status(status);
  if (!parsed_status) throw ParseError("'" + where + "status': unknown value '" + status + "'");
  cmd.status = *parsed_status;
  if (const auto it = c.find("embedding_row"); it != c.end() && !it->is_null()) {
    if (!it->is_number_integer() || it->get<long long>() < 0) {
      throw ParseError("'" + where + "embedding_row' must be a nonnegative integer or null");
    }
    cmd.embedding_row = it->get<std::size_t>();
  }
  if (const auto it = c.find("category"); it != c.end() && !it->is_null()) {
    const auto name = it->is_string() ? it->get<std::string>() : std::string();
    const auto cat = parse_category(name);
    if (!cat) throw ParseError("'" + where + "category': unknown value");
    cmd.category = *cat;
  }
  try {
    validate(cmd);
  } catch (const ValidationError& e) {
    throw ValidationError(where + " " + e.what());
  }
  return cmd;
}

}  // namespace

ParsedManifest parse_manifest(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("manifest syntax error at byte ") + std::to_string(e.byte) + ": " +
                     e.what());
  }
  if (!doc.is_object()) throw ParseError("manifest must be a JSON object");
  warn_unknown_keys(doc, {"participant_id", "session_index", "task", "moca", "embeddings", "commands"},
                    "");

  ParsedManifest out;
  Session& s = out.session;
  s.participant_id = require_string(doc, "participant_id", "");
  if (s.participant_id.empty()) throw ParseError("participant_id must be nonempty");
  const auto index = require_int(doc, "session_index", "");
  if (index < 1 || index > kMaxSessionIndex) {
    throw ValidationError("session_index = " + std::to_string(index) + " outside [1, 7]");
  }
  s.session_index = static_cast<int>(index);
  const auto task = require_string(doc, "task", "");
  const auto parsed_task = parse_task(task);
  if (!parsed_task) throw ParseError("'task': unknown value '" + task + "'");
  s.task = *parsed_task;

  const auto& moca = require(doc, "moca", "");
  if (!moca.is_object()) throw ParseError("'moca' must be an object");
  warn_unknown_keys(moca, {"total", "memory", "executive_function", "attention", "language",
                           "visuospatial", "orientation"},
                    "moca.");
  MocaScores scores;
  scores.total = moca_field(moca, "total");
  scores.memory = moca_field(moca, "memory");
  scores.executive_function = moca_field(moca, "executive_function");
  scores.attention = moca_field(moca, "attention");
  scores.language = moca_field(moca, "language");
  scores.visuospatial = moca_field(moca, "visuospatial");
  scores.orientation = moca_field(moca, "orientation");
  s.moca = MocaAssessment(scores);

  if (const auto it = doc.find("embeddings"); it != doc.end() && !it->is_null()) {
    if (!it->is_object()) throw ParseError("'embeddings' must be an object");
    warn_unknown_keys(*it, {"audio", "textual", "sentence"}, "embeddings.");
    for (const auto m : kModalities) {
      const auto e = it->find(std::string(to_string(m)));
      if (e == it->end() || e->is_null()) continue;
      if (!e->is_string()) throw ParseError("'embeddings." + std::string(to_string(m)) + "' must be a path");
      out.embedding_paths[static_cast<std::size_t>(m)] = e->get<std::string>();
    }
  }

  const auto& commands = require(doc, "commands", "");
  if (!commands.is_array()) throw ParseError("'commands' must be an array");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    auto cmd = parse_command(commands[i], i);
    if (!ids.insert(cmd.command_id).second) {
      throw ValidationError("commands[" + std::to_string(i) + "]: duplicate command_id '" +
                            cmd.command_id + "'");
    }
    s.commands.push_back(std::move(cmd));
  }
  return out;
}

std::string write_manifest(const Session& session, const EmbeddingPaths& paths) {
  ordered_json doc;
  doc["participant_id"] = session.participant_id;
  doc["session_index"] = session.session_index;
  doc["task"] = to_string(session.task);
  const auto& sc = session.moca.scores();
  doc["moca"] = ordered_json{{"total", sc.total},
                             {"memory", sc.memory},
                             {"executive_function", sc.executive_function},
                             {"attention", sc.attention},
                             {"language", sc.language},
                             {"visuospatial", sc.visuospatial},
                             {"orientation", sc.orientation}};
  ordered_json emb = ordered_json::object();
  for (const auto m : kModalities) {
    if (const auto& p = paths[static_cast<std::size_t>(m)]) emb[std::string(to_string(m))] = *p;
  }
  doc["embeddings"] = emb;
  ordered_json commands = ordered_json::array();
  for (const auto& c : session.commands) {
    ordered_json jc;
    jc["command_id"] = c.command_id;
    jc["speaker"] = to_string(c.speaker);
    jc["transcript"] = c.transcript;
    jc["status"] = to_string(c.status);
    jc["embedding_row"] = c.embedding_row ? ordered_json(*c.embedding_row) : ordered_json(nullptr);
    if (c.category) jc["category"] = to_string(*c.category);
    commands.push_back(std::move(jc));
  }
  doc["commands"] = std::move(commands);
  return doc.dump(2) + "\n";
}

Session load_session(const std::filesystem::path& manifest_path) {
  auto parsed = [&] {
    try {
      return parse_manifest(read_text_file(manifest_path));
    } catch (const ValidationError& e) {
      throw ValidationError(manifest_path.string() + ": " + e.what());
    } catch (const ParseError& e) {
      throw ParseError(manifest_path.string() + ": " + e.what());
    }
  }();
  const auto base = manifest_path.parent_path();
  for (const auto m : kModalities) {
    const auto& rel = parsed.embedding_paths[static_cast<std::size_t>(m)];
    if (!rel) continue;
    parsed.session.embedding(m) = read_embedding_file(base / *rel);
  }
  return std::move(parsed.session);
}

}  // namespace vamci::ingest
