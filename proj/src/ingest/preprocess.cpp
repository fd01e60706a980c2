#include "vamci/ingest/preprocess.hpp"

#include <vector>

#include "vamci/core/error.hpp"
#include "vamci/core/log.hpp"

namespace vamci::ingest {

Session preprocess(const Session& session, DropCounts* drops) {
  DropCounts counts;
  Session out;
  out.participant_id = session.participant_id;
  out.session_index = session.session_index;
  out.task = session.task;
  out.moca = session.moca;

  std::vector<std::size_t> kept_rows;
  for (const auto& c : session.commands) {
    if (c.speaker != Speaker::participant) {
      ++counts.non_participant;
      continue;
    }
    if (c.status == CommandStatus::asr_error) {
      ++counts.asr_error;
      continue;
    }
    if (c.status == CommandStatus::unmatched) {
      ++counts.unmatched;
      continue;
    }
    bool resolvable = c.embedding_row.has_value();
    for (const auto& m : session.embeddings) {
      if (resolvable && m && *c.embedding_row >= m->rows()) resolvable = false;
    }
    if (!resolvable) {
      ++counts.unresolved_row;
      continue;
    }
    Command kept = c;
    kept.embedding_row = kept_rows.size();
    kept_rows.push_back(*c.embedding_row);
    out.commands.push_back(std::move(kept));
  }

  if (drops) *drops = counts;
  if (out.commands.empty()) {
    throw ValidationError(session.key() + ": empty session after preprocessing (" +
                          std::to_string(counts.total()) + " commands dropped)");
  }

  for (std::size_t i = 0; i < session.embeddings.size(); ++i) {
    if (session.embeddings[i]) out.embeddings[i] = session.embeddings[i]->select_rows(kept_rows);
  }

  const auto m = out.commands.size();
  if (m < kTypicalMinCommands || m > kTypicalMaxCommands) {
    warn(session.key() + ": " + std::to_string(m) + " participant commands, outside the typical [30, 65]");
  }
  return out;
}

}  // namespace vamci::ingest
