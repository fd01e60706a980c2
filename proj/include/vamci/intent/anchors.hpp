#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vamci/core/catalog.hpp"
#include "vamci/core/embedding.hpp"

namespace vamci::intent {

// Ordered reference commands with one sentence embedding per entry.
class AnchorSet {
 public:
  // Throws ValidationError if the set is empty, sizes disagree, or an embedding has zero norm.
  AnchorSet(std::vector<AnchorEntry> entries, EmbeddingMatrix embeddings);

  std::size_t size() const { return entries_.size(); }
  const std::vector<AnchorEntry>& entries() const { return entries_; }
  const EmbeddingMatrix& embeddings() const { return embeddings_; }

 private:
  std::vector<AnchorEntry> entries_;
  EmbeddingMatrix embeddings_;
};

// Anchor file (JSON): { "embeddings": "<vaef path relative to this file>",
//                       "entries": [ {anchor_text, intent_text, category|null}, ... ] }
AnchorSet load_anchor_set(const std::filesystem::path& path);
// Entries only; the embedding file is neither opened nor required to exist.
std::vector<AnchorEntry> load_anchor_entries(const std::filesystem::path& path);

// Writes <path> and the VAEF file named by `embeddings_file` next to it.
void write_anchor_set(const std::filesystem::path& path, const AnchorSet& anchors,
                      const std::string& embeddings_file);

}  // namespace vamci::intent
