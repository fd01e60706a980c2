#include "vamci/intent/anchors.hpp"

#include <cmath>
#include <json.hpp>

#include "vamci/core/error.hpp"
#include "vamci/ingest/vaef.hpp"

namespace vamci::intent {

AnchorSet::AnchorSet(std::vector<AnchorEntry> entries, EmbeddingMatrix embeddings)
    : entries_(std::move(entries)), embeddings_(std::move(embeddings)) {
  if (entries_.empty()) throw ValidationError("anchor set must contain at least one entry");
  if (embeddings_.rows() != entries_.size()) {
    throw ValidationError("anchor set has " + std::to_string(entries_.size()) +
                          " entries but " + std::to_string(embeddings_.rows()) + " embedding rows");
  }
  for (std::size_t i = 0; i < embeddings_.rows(); ++i) {
    double sq = 0.0;
    for (const float v : embeddings_.row(i)) sq += static_cast<double>(v) * v;
    if (!(sq > 0.0)) throw ValidationError("anchor " + std::to_string(i) + " has a zero-norm embedding");
  }
}

namespace {

nlohmann::json read_anchor_doc(const std::filesystem::path& path) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(ingest::read_text_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array() ||
      !doc.contains("embeddings") || !doc["embeddings"].is_string()) {
    throw ParseError(path.string() + ": anchor file needs 'embeddings' (path) and 'entries' (array)");
  }
  return doc;
}

std::vector<AnchorEntry> parse_entries(const nlohmann::json& doc, const std::filesystem::path& path) {
  std::vector<AnchorEntry> entries;
  for (const auto& e : doc["entries"]) {
    if (!e.is_object() || !e.contains("anchor_text") || !e["anchor_text"].is_string() ||
        !e.contains("intent_text") || !e["intent_text"].is_string()) {
      throw ParseError(path.string() + ": entry " + std::to_string(entries.size()) +
                       " needs string anchor_text and intent_text");
    }
    AnchorEntry entry{e["anchor_text"].get<std::string>(), e["intent_text"].get<std::string>(),
                      std::nullopt};
    if (const auto it = e.find("category"); it != e.end() && !it->is_null()) {
      const auto cat = it->is_string() ? parse_category(it->get<std::string>()) : std::nullopt;
      if (!cat) throw ParseError(path.string() + ": unknown category in entry " + std::to_string(entries.size()));
      entry.category = *cat;
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

}  // namespace

std::vector<AnchorEntry> load_anchor_entries(const std::filesystem::path& path) {
  return parse_entries(read_anchor_doc(path), path);
}

AnchorSet load_anchor_set(const std::filesystem::path& path) {
  const auto doc = read_anchor_doc(path);
  auto entries = parse_entries(doc, path);
  auto embeddings =
      ingest::read_embedding_file(path.parent_path() / doc["embeddings"].get<std::string>());
  return AnchorSet(std::move(entries), std::move(embeddings));
}

void write_anchor_set(const std::filesystem::path& path, const AnchorSet& anchors,
                      const std::string& embeddings_file) {
  nlohmann::ordered_json doc;
  doc["embeddings"] = embeddings_file;
  auto entries = nlohmann::ordered_json::array();
  for (const auto& e : anchors.entries()) {
    nlohmann::ordered_json je;
    je["anchor_text"] = e.anchor_text;
    je["intent_text"] = e.intent_text;
    je["category"] = e.category ? nlohmann::ordered_json(to_string(*e.category))
                                : nlohmann::ordered_json(nullptr);
    entries.push_back(std::move(je));
  }
  doc["entries"] = std::move(entries);
  ingest::write_text_file(path, doc.dump(2) + "\n");
  ingest::write_embedding_file(path.parent_path() / embeddings_file, anchors.embeddings());
}

}  // namespace vamci::intent
