#include "vamci/ingest/cohort_io.hpp"

#include <algorithm>

#include "vamci/core/error.hpp"
#include "vamci/core/log.hpp"
#include "vamci/ingest/manifest.hpp"
#include "vamci/ingest/vaef.hpp"

namespace vamci::ingest {

namespace fs = std::filesystem;

std::string session_file_stem(const Session& session) {
  return session.participant_id + "_s" + std::to_string(session.session_index) + "_" +
         std::string(to_string(session.task));
}

std::vector<fs::path> list_manifests(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw ParseError("not a directory: " + dir.string());
  const fs::path root = fs::is_directory(dir / "sessions") ? dir / "sessions" : dir;
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Cohort load_cohort(const fs::path& dir) {
  Cohort cohort;
  cohort.provenance = Provenance::ingested;
  std::size_t nonstandard = 0;
  for (const auto& path : list_manifests(dir)) {
    auto session = load_session(path);
    for (const auto& m : session.embeddings) {
      if (m && !is_standard_width(m->cols())) ++nonstandard;
    }
    cohort.sessions.push_back(std::move(session));
  }
  if (nonstandard > 0) {
    warn(std::to_string(nonstandard) + " embedding file(s) in " + dir.string() +
         " have widths other than 768/1024");
  }
  validate(cohort);
  return cohort;
}

void write_cohort(const fs::path& dir, const Cohort& cohort) {
  const fs::path root = dir / "sessions";
  fs::create_directories(root);
  for (const auto& session : cohort.sessions) {
    const auto stem = session_file_stem(session);
    EmbeddingPaths paths;
    for (const auto m : kModalities) {
      const auto& matrix = session.embedding(m);
      if (!matrix) continue;
      const auto name = stem + "." + std::string(to_string(m)) + ".vaef";
      write_embedding_file(root / name, *matrix);
      paths[static_cast<std::size_t>(m)] = name;
    }
    write_text_file(root / (stem + ".json"), write_manifest(session, paths));
  }
}

}  // namespace vamci::ingest
