#pragma once

#include <cstddef>

#include "vamci/core/model.hpp"

namespace vamci::ingest {

// Why commands were removed by preprocess().
struct DropCounts {
  std::size_t non_participant = 0;  // assistant / other speakers
  std::size_t asr_error = 0;
  std::size_t unmatched = 0;
  std::size_t unresolved_row = 0;  // embedding_row missing from an attached modality

  std::size_t total() const { return non_participant + asr_error + unmatched + unresolved_row; }
};

inline constexpr std::size_t kTypicalMinCommands = 30;
inline constexpr std::size_t kTypicalMaxCommands = 65;

// Keeps participant commands with status=ok whose embedding_row exists in every attached
// modality, preserving order. Attached matrices are re-sliced to the surviving rows and
// embedding_row is renumbered 0..m-1. Warns when m falls outside [30, 65].
// Throws ValidationError when nothing survives.
Session preprocess(const Session& session, DropCounts* drops = nullptr);

}  // namespace vamci::ingest
