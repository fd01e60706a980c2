#include "vamci/core/model.hpp"

#include <set>
#include <tuple>
#include <unordered_set>

#include "vamci/core/error.hpp"

namespace vamci {
namespace {

template <typename Enum, std::size_t N>
std::optional<Enum> parse_by_name(std::string_view s, const std::array<Enum, N>& values) {
  for (const auto v : values) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

void check_range(std::string_view name, int value, int max) {
  if (value < 0 || value > max) {
    throw ValidationError("moca." + std::string(name) + " = " + std::to_string(value) +
                          " outside [0, " + std::to_string(max) + "]");
  }
}

}  // namespace

std::string_view to_string(Speaker v) {
  switch (v) {
    case Speaker::participant: return "participant";
    case Speaker::assistant: return "assistant";
    case Speaker::other: return "other";
  }
  return "?";
}

std::string_view to_string(CommandStatus v) {
  switch (v) {
    case CommandStatus::ok: return "ok";
    case CommandStatus::asr_error: return "asr_error";
    case CommandStatus::unmatched: return "unmatched";
  }
  return "?";
}

std::string_view to_string(Category v) {
  switch (v) {
    case Category::information: return "information";
    case Category::entertainment: return "entertainment";
    case Category::productivity: return "productivity";
    case Category::shopping: return "shopping";
    case Category::communication: return "communication";
    case Category::smart_home: return "smart_home";
  }
  return "?";
}

std::string_view to_string(Task v) { return v == Task::reading ? "reading" : "generation"; }
std::string_view to_string(Diagnosis v) { return v == Diagnosis::mci ? "MCI" : "HC"; }
std::string_view to_string(Provenance v) {
  return v == Provenance::ingested ? "ingested" : "simulated";
}

std::string_view to_string(Modality v) {
  switch (v) {
    case Modality::audio: return "audio";
    case Modality::textual: return "textual";
    case Modality::sentence: return "sentence";
  }
  return "?";
}

std::string_view to_string(Subdomain v) {
  switch (v) {
    case Subdomain::memory: return "memory";
    case Subdomain::executive_function: return "executive_function";
    case Subdomain::attention: return "attention";
    case Subdomain::language: return "language";
    case Subdomain::visuospatial: return "visuospatial";
    case Subdomain::orientation: return "orientation";
  }
  return "?";
}

std::optional<Speaker> parse_speaker(std::string_view s) {
  return parse_by_name(s, std::array{Speaker::participant, Speaker::assistant, Speaker::other});
}
std::optional<CommandStatus> parse_status(std::string_view s) {
  return parse_by_name(
      s, std::array{CommandStatus::ok, CommandStatus::asr_error, CommandStatus::unmatched});
}
std::optional<Category> parse_category(std::string_view s) {
  return parse_by_name(s, std::array{Category::information, Category::entertainment,
                                     Category::productivity, Category::shopping,
                                     Category::communication, Category::smart_home});
}
std::optional<Task> parse_task(std::string_view s) {
  return parse_by_name(s, std::array{Task::reading, Task::generation});
}
std::optional<Diagnosis> parse_diagnosis(std::string_view s) {
  return parse_by_name(s, std::array{Diagnosis::mci, Diagnosis::hc});
}
std::optional<Modality> parse_modality(std::string_view s) { return parse_by_name(s, kModalities); }
std::optional<Subdomain> parse_subdomain(std::string_view s) { return parse_by_name(s, kSubdomains); }

void validate(const Command& command) {
  if (command.status != CommandStatus::ok) return;
  if (!command.embedding_row) {
    throw ValidationError("command " + command.command_id + ": status=ok requires embedding_row");
  }
  if (command.transcript.empty()) {
    throw ValidationError("command " + command.command_id + ": status=ok requires a transcript");
  }
}

int subdomain_max(Subdomain s) {
  switch (s) {
    case Subdomain::memory: return 15;
    case Subdomain::executive_function: return 13;
    case Subdomain::attention: return 18;
    case Subdomain::language: return 6;
    case Subdomain::visuospatial: return 7;
    case Subdomain::orientation: return 6;
  }
  return 0;
}

MocaAssessment::MocaAssessment(const MocaScores& scores) : scores_(scores) {
  check_range("total", scores.total, kMocaTotalMax);
  for (const auto s : kSubdomains) check_range(to_string(s), subdomain(s), subdomain_max(s));
}

int MocaAssessment::subdomain(Subdomain s) const {
  switch (s) {
    case Subdomain::memory: return scores_.memory;
    case Subdomain::executive_function: return scores_.executive_function;
    case Subdomain::attention: return scores_.attention;
    case Subdomain::language: return scores_.language;
    case Subdomain::visuospatial: return scores_.visuospatial;
    case Subdomain::orientation: return scores_.orientation;
  }
  return 0;
}

Diagnosis label_from_moca(const MocaAssessment& moca) {
  return moca.total() >= kHealthyThreshold ? Diagnosis::hc : Diagnosis::mci;
}

std::string Session::key() const {
  return participant_id + "/s" + std::to_string(session_index) + "/" + std::string(to_string(task));
}

void validate(const Session& session) {
  if (session.session_index < 1 || session.session_index > kMaxSessionIndex) {
    throw ValidationError(session.key() + ": session_index outside [1, 7]");
  }
  std::unordered_set<std::string> ids;
  for (const auto& c : session.commands) {
    validate(c);
    if (!ids.insert(c.command_id).second) {
      throw ValidationError(session.key() + ": duplicate command_id '" + c.command_id + "'");
    }
  }
}

std::size_t participant_command_count(const Session& session) {
  std::size_t n = 0;
  for (const auto& c : session.commands) {
    if (c.speaker == Speaker::participant && c.status == CommandStatus::ok) ++n;
  }
  return n;
}

void validate(const Cohort& cohort) {
  std::set<std::tuple<std::string, int, Task>> seen;
  for (const auto& s : cohort.sessions) {
    if (!seen.emplace(s.participant_id, s.session_index, s.task).second) {
      throw ValidationError("duplicate session " + s.key());
    }
  }
}

}  // namespace vamci
