#include <doctest.h>

#include <cstring>
#include <json.hpp>

#include "../support/pipeline.hpp"
#include "vamci/core/log.hpp"
#include "vamci/ingest/cohort_io.hpp"
#include "vamci/ingest/manifest.hpp"
#include "vamci/ingest/preprocess.hpp"
#include "vamci/ingest/vaef.hpp"

using namespace vamci;
using namespace vamci::ingest;

namespace {

std::vector<std::uint8_t> header(std::uint32_t rows, std::uint32_t cols) {
  std::vector<std::uint8_t> b{'V', 'A', 'E', 'F', 1, 0, 1, 0};
  for (const auto v : {rows, cols})
    for (int k = 0; k < 4; ++k) b.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
  return b;
}

VaefErrc code_of(const std::vector<std::uint8_t>& bytes) {
  try {
    read_embedding(bytes);
  } catch (const VaefError& e) {
    return e.code();
  }
  FAIL("expected a VAEF error");
  return VaefErrc::bad_magic;
}

nlohmann::json minimal_manifest() {
  return nlohmann::json::parse(R"({
    "participant_id": "P01", "session_index": 1, "task": "reading",
    "moca": {"total": 27, "memory": 12, "executive_function": 10, "attention": 16,
             "language": 5, "visuospatial": 6, "orientation": 6},
    "embeddings": {"sentence": "s.vaef"},
    "commands": [{"command_id": "c1", "speaker": "participant", "transcript": "What time is it?",
                  "status": "ok", "embedding_row": 0}]
  })");
}

Command participant(const std::string& id, std::size_t row) {
  Command c;
  c.command_id = id;
  c.transcript = "text " + id;
  c.embedding_row = row;
  return c;
}

}  // namespace

TEST_CASE("VAEF layout") {
  const EmbeddingMatrix m(1, 2, {1.0f, 2.0f});
  const auto bytes = write_embedding(m);
  REQUIRE(bytes.size() == kVaefHeaderSize + 8);
  auto want = header(1, 2);
  CHECK(std::equal(want.begin(), want.end(), bytes.begin()));
  float f = 0;
  std::memcpy(&f, bytes.data() + 20, 4);
  CHECK(f == 2.0f);
  CHECK(read_embedding(bytes) == m);

  const auto empty = write_embedding(EmbeddingMatrix(0, 768, {}));
  CHECK(empty.size() == kVaefHeaderSize);
  CHECK(read_embedding(empty).cols() == 768);
}

TEST_CASE("VAEF round trip is bit exact") {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    auto m = testing_support::random_embedding(rng, static_cast<std::uint32_t>(rng() % 9), 1 + rng() % 7);
    std::vector<float> d = m.data();
    if (!d.empty()) d[0] = -0.0f;
    m = EmbeddingMatrix(m.rows(), m.cols(), d);
    CHECK(read_embedding(write_embedding(m)) == m);
  }
}

TEST_CASE("VAEF format errors") {
  auto bad_magic = header(0, 1);
  std::memcpy(bad_magic.data(), "XXXX", 4);
  CHECK(code_of(bad_magic) == VaefErrc::bad_magic);

  auto truncated = header(2, 3);
  truncated.resize(truncated.size() + 5 * 4, 0);
  CHECK(code_of(truncated) == VaefErrc::truncated_payload);

  auto trailing = header(1, 1);
  trailing.resize(trailing.size() + 8, 0);
  CHECK(code_of(trailing) == VaefErrc::trailing_bytes);

  CHECK(code_of({'V', 'A', 'E'}) == VaefErrc::truncated_header);
  auto version = header(0, 1);
  version[4] = 2;
  CHECK(code_of(version) == VaefErrc::unsupported_version);
  auto dtype = header(0, 1);
  dtype[6] = 2;
  CHECK(code_of(dtype) == VaefErrc::unsupported_dtype);
  auto reserved = header(0, 1);
  reserved[7] = 1;
  CHECK(code_of(reserved) == VaefErrc::bad_reserved);
  CHECK(code_of(header(0, 0)) == VaefErrc::zero_columns);

  auto nan = header(1, 1);
  for (const std::uint8_t b : {0x00, 0x00, 0xc0, 0x7f}) nan.push_back(b);
  CHECK(code_of(nan) == VaefErrc::non_finite);
}

TEST_CASE("VAEF file errors name the path") {
  const auto dir = testing_support::scratch_dir("vaef_path");
  const auto p = dir / "broken.vaef";
  write_file_bytes(p, std::vector<std::uint8_t>{'V', 'A'});
  try {
    read_embedding_file(p);
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("broken.vaef") != std::string::npos);
  }
  CHECK_THROWS_AS(read_embedding_file(dir / "missing.vaef"), ParseError);
}

TEST_CASE("manifest parsing") {
  const auto parsed = parse_manifest(minimal_manifest().dump());
  CHECK(parsed.session.commands.size() == 1);
  CHECK(parsed.session.moca.total() == 27);
  CHECK(parsed.embedding_paths[static_cast<std::size_t>(Modality::sentence)] == "s.vaef");

  auto j = minimal_manifest();
  j["moca"]["total"] = 31;
  CHECK_THROWS_AS(parse_manifest(j.dump()), ValidationError);

  j = minimal_manifest();
  j["commands"].push_back(j["commands"][0]);
  CHECK_THROWS_AS(parse_manifest(j.dump()), ValidationError);

  j = minimal_manifest();
  j.erase("task");
  CHECK_THROWS_AS(parse_manifest(j.dump()), ParseError);
  CHECK_THROWS_AS(parse_manifest("{not json"), ParseError);

  j = minimal_manifest();
  j["notes"] = "x";
  WarningCapture capture;
  parse_manifest(j.dump());
  CHECK(capture.contains("notes"));
}

TEST_CASE("manifest serialization round trips") {
  const auto parsed = parse_manifest(minimal_manifest().dump());
  const auto text = write_manifest(parsed.session, parsed.embedding_paths);
  const auto again = parse_manifest(text);
  CHECK(again.session == parsed.session);
  CHECK(write_manifest(again.session, again.embedding_paths) == text);
}

TEST_CASE("preprocess keeps participant ok commands and re-slices") {
  Session s;
  s.participant_id = "P01";
  std::vector<float> sentence;
  for (int i = 0; i < 36; ++i) {
    s.commands.push_back(participant("c" + std::to_string(i), i));
    sentence.push_back(static_cast<float>(i));
  }
  s.commands[3].speaker = Speaker::assistant;
  s.commands[10].status = CommandStatus::asr_error;
  s.commands[10].transcript = "audio could not be understood";
  s.embedding(Modality::sentence) = EmbeddingMatrix(36, 1, sentence);
  s.embedding(Modality::audio) = EmbeddingMatrix(36, 1, sentence);

  DropCounts drops;
  const auto out = preprocess(s, &drops);
  REQUIRE(out.commands.size() == 34);
  CHECK(drops.non_participant == 1);
  CHECK(drops.asr_error == 1);
  CHECK(out.embedding(Modality::sentence)->rows() == 34);
  CHECK(participant_command_count(out) == out.commands.size());
  // order and bit-exact rows
  std::size_t k = 0;
  for (int i = 0; i < 36; ++i) {
    if (i == 3 || i == 10) continue;
    CHECK(out.commands[k].command_id == "c" + std::to_string(i));
    CHECK(out.commands[k].embedding_row == k);
    CHECK(out.embedding(Modality::sentence)->row(k)[0] == static_cast<float>(i));
    CHECK(out.embedding(Modality::audio)->row(k)[0] == static_cast<float>(i));
    ++k;
  }
  CHECK(preprocess(out) == out);
}

TEST_CASE("preprocess drops unmatched and unresolved commands, rejects empty results") {
  Session s;
  s.participant_id = "P02";
  s.commands = {participant("a", 0), participant("b", 1), participant("c", 5)};
  s.commands[1].status = CommandStatus::unmatched;
  s.embedding(Modality::textual) = EmbeddingMatrix(2, 1, {1.0f, 2.0f});
  DropCounts drops;
  WarningCapture quiet;
  const auto out = preprocess(s, &drops);
  CHECK(out.commands.size() == 1);
  CHECK(drops.unmatched == 1);
  CHECK(drops.unresolved_row == 1);
  CHECK(quiet.contains("outside the typical"));

  s.commands = {participant("a", 0)};
  s.commands[0].speaker = Speaker::assistant;
  CHECK_THROWS_AS(preprocess(s), ValidationError);
}

TEST_CASE("cohorts round trip through the directory layout") {
  sim::SimConfig cfg;
  cfg.n_participants = 3;
  cfg.sessions_per_participant = 2;
  cfg.dims = {4, 5, 6};
  const auto sim = sim::simulate_cohort(cfg);
  const auto dir = testing_support::scratch_dir("cohort_io");
  write_cohort(dir, sim.cohort);
  const auto loaded = load_cohort(dir);
  REQUIRE(loaded.sessions.size() == sim.cohort.sessions.size());
  // load order is by filename; compare as a set keyed by session key
  for (const auto& s : sim.cohort.sessions) {
    const auto it = std::find_if(loaded.sessions.begin(), loaded.sessions.end(),
                                 [&](const Session& t) { return t.key() == s.key(); });
    REQUIRE(it != loaded.sessions.end());
    CHECK(*it == s);
  }
  CHECK(list_manifests(dir / "sessions").size() == loaded.sessions.size());
}
