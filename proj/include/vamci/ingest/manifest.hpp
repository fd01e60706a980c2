#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "vamci/core/model.hpp"

namespace vamci::ingest {

// Embedding file references, indexed by Modality; paths are relative to the manifest.
using EmbeddingPaths = std::array<std::optional<std::string>, 3>;

struct ParsedManifest {
  Session session;  // embeddings not yet loaded
  EmbeddingPaths embedding_paths;
};

// Parses one JSON session manifest:
//   { participant_id, session_index, task, moca{total, memory, executive_function, attention,
//     language, visuospatial, orientation}, embeddings{audio?, textual?, sentence?},
//     commands[{command_id, speaker, transcript, status, embedding_row, category?}] }
// Syntax errors and missing/mistyped fields raise ParseError; out-of-range values and
// duplicate command ids raise ValidationError. Unknown keys produce a warning.
ParsedManifest parse_manifest(std::string_view text);

// Deterministic serialization (fixed key order, two-space indent, trailing newline).
std::string write_manifest(const Session& session, const EmbeddingPaths& paths);

// Parses the manifest and loads every referenced VAEF file.
Session load_session(const std::filesystem::path& manifest_path);

}  // namespace vamci::ingest
