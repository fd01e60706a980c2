#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vamci/core/embedding.hpp"

namespace vamci {

enum class Speaker { participant, assistant, other };
enum class CommandStatus { ok, asr_error, unmatched };
enum class Category { information, entertainment, productivity, shopping, communication, smart_home };
enum class Task { reading, generation };
enum class Diagnosis { mci, hc };
enum class Provenance { ingested, simulated };

// Per-command embedding sources. `sentence` holds the sentence-encoder vectors that the
// intent features compare against the anchor set.
enum class Modality { audio, textual, sentence };
inline constexpr std::array<Modality, 3> kModalities = {Modality::audio, Modality::textual,
                                                        Modality::sentence};

enum class Subdomain { memory, executive_function, attention, language, visuospatial, orientation };
inline constexpr std::array<Subdomain, 6> kSubdomains = {
    Subdomain::memory,   Subdomain::executive_function, Subdomain::attention,
    Subdomain::language, Subdomain::visuospatial,       Subdomain::orientation};

std::string_view to_string(Speaker v);
std::string_view to_string(CommandStatus v);
std::string_view to_string(Category v);
std::string_view to_string(Task v);
std::string_view to_string(Diagnosis v);
std::string_view to_string(Provenance v);
std::string_view to_string(Modality v);
std::string_view to_string(Subdomain v);

// Inverse of to_string; nullopt for unknown names.
std::optional<Speaker> parse_speaker(std::string_view s);
std::optional<CommandStatus> parse_status(std::string_view s);
std::optional<Category> parse_category(std::string_view s);
std::optional<Task> parse_task(std::string_view s);
std::optional<Diagnosis> parse_diagnosis(std::string_view s);
std::optional<Modality> parse_modality(std::string_view s);
std::optional<Subdomain> parse_subdomain(std::string_view s);

struct Command {
  std::string command_id;
  Speaker speaker = Speaker::participant;
  std::string transcript;
  std::optional<Category> category;
  CommandStatus status = CommandStatus::ok;
  std::optional<std::size_t> embedding_row;

  friend bool operator==(const Command&, const Command&) = default;
};

// Throws ValidationError if status=ok without an embedding row or transcript.
void validate(const Command& command);

struct MocaScores {
  int total = 0;
  int memory = 0;
  int executive_function = 0;
  int attention = 0;
  int language = 0;
  int visuospatial = 0;
  int orientation = 0;

  friend bool operator==(const MocaScores&, const MocaScores&) = default;
};

inline constexpr int kMocaTotalMax = 30;
int subdomain_max(Subdomain s);

// MoCA total plus six index scores, each range-checked on construction.
// Index scores are independent of the total (no sum constraint).
class MocaAssessment {
 public:
  explicit MocaAssessment(const MocaScores& scores);

  const MocaScores& scores() const { return scores_; }
  int total() const { return scores_.total; }
  int subdomain(Subdomain s) const;

  friend bool operator==(const MocaAssessment&, const MocaAssessment&) = default;

 private:
  MocaScores scores_;
};

inline constexpr int kHealthyThreshold = 26;

// HC iff total >= 26.
Diagnosis label_from_moca(const MocaAssessment& moca);

struct Session {
  std::string participant_id;
  int session_index = 1;
  Task task = Task::reading;
  std::vector<Command> commands;
  MocaAssessment moca{MocaScores{}};
  std::array<std::optional<EmbeddingMatrix>, 3> embeddings;

  const std::optional<EmbeddingMatrix>& embedding(Modality m) const {
    return embeddings[static_cast<std::size_t>(m)];
  }
  std::optional<EmbeddingMatrix>& embedding(Modality m) {
    return embeddings[static_cast<std::size_t>(m)];
  }

  // "<participant>/s<index>/<task>", used in diagnostics.
  std::string key() const;

  friend bool operator==(const Session&, const Session&) = default;
};

inline constexpr int kMaxSessionIndex = 7;

// Checks session_index range, command invariants and command_id uniqueness.
void validate(const Session& session);

// Number of commands with speaker=participant and status=ok.
std::size_t participant_command_count(const Session& session);

struct Cohort {
  std::vector<Session> sessions;
  Provenance provenance = Provenance::ingested;
};

// Throws ValidationError if two sessions share (participant_id, session_index, task).
void validate(const Cohort& cohort);

}  // namespace vamci
