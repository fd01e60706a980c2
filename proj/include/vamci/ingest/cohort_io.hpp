#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vamci/core/model.hpp"

namespace vamci::ingest {

// Cohort directory layout:
//   <dir>/sessions/<participant>_s<index>_<task>.json      manifest
//   <dir>/sessions/<participant>_s<index>_<task>.<modality>.vaef
// load_cohort also accepts a directory holding manifests directly.

std::string session_file_stem(const Session& session);

// Manifests in lexicographic filename order.
std::vector<std::filesystem::path> list_manifests(const std::filesystem::path& dir);

Cohort load_cohort(const std::filesystem::path& dir);

// Writes manifest + one VAEF per attached modality for every session.
void write_cohort(const std::filesystem::path& dir, const Cohort& cohort);

}  // namespace vamci::ingest
