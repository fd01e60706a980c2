#include "vamci/fusion/feature_io.hpp"

#include <charconv>
#include <sstream>

#include "vamci/core/error.hpp"
#include "vamci/ingest/vaef.hpp"

namespace vamci::fusion {
namespace {

constexpr const char* kLabelsHeader =
    "participant_id,session_index,label,total,memory,executive_function,attention,language,"
    "visuospatial,orientation";

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw ParseError("labels csv line " + std::to_string(line_no) + ": unterminated quote");
  fields.push_back(std::move(cur));
  return fields;
}

int parse_int(const std::string& s, std::size_t line_no) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("labels csv line " + std::to_string(line_no) + ": bad integer '" + s + "'");
  }
  return v;
}

}  // namespace

FeatureTable build_feature_table(const std::vector<Session>& sessions, const intent::AnchorSet* anchors,
                                 Task task, FeatureMode mode) {
  FeatureTable table;
  table.task = task;
  table.mode = mode;
  std::vector<double> values;
  std::size_t dim = 0;
  for (const auto& s : sessions) {
    if (s.task != task) continue;
    const auto needs_intent = mode_components(mode).front() == Component::intent;
    if (needs_intent && !anchors) throw MissingComponentError(mode, Component::intent);
    const auto fv = build_feature_vector(session_components(s, anchors), mode);
    if (table.samples.empty()) {
      dim = fv.dim();
    } else if (fv.dim() != dim) {
      throw ValidationError(s.key() + ": feature width " + std::to_string(fv.dim()) +
                            " differs from " + std::to_string(dim));
    }
    values.insert(values.end(), fv.values.begin(), fv.values.end());
    table.samples.push_back({s.participant_id, s.session_index, label_from_moca(s.moca), s.moca.scores()});
  }
  table.x = Matrix(table.samples.size(), dim, std::move(values));
  return table;
}

std::string feature_table_stem(Task task, FeatureMode mode) {
  return std::string(to_string(task)) + "_" + std::string(to_string(mode));
}

std::string write_labels_csv(const std::vector<SampleInfo>& samples) {
  std::ostringstream out;
  out << kLabelsHeader << '\n';
  for (const auto& s : samples) {
    const auto& m = s.moca;
    out << csv_field(s.participant_id) << ',' << s.session_index << ',' << to_string(s.label) << ','
        << m.total << ',' << m.memory << ',' << m.executive_function << ',' << m.attention << ','
        << m.language << ',' << m.visuospatial << ',' << m.orientation << '\n';
  }
  return out.str();
}

std::vector<SampleInfo> parse_labels_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kLabelsHeader) throw ParseError("labels csv: bad header");
  std::vector<SampleInfo> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv_line(line, line_no);
    if (f.size() != 10) throw ParseError("labels csv line " + std::to_string(line_no) + ": expected 10 fields");
    SampleInfo s;
    s.participant_id = f[0];
    s.session_index = parse_int(f[1], line_no);
    const auto label = parse_diagnosis(f[2]);
    if (!label) throw ParseError("labels csv line " + std::to_string(line_no) + ": bad label");
    s.label = *label;
    s.moca = {parse_int(f[3], line_no), parse_int(f[4], line_no), parse_int(f[5], line_no),
              parse_int(f[6], line_no), parse_int(f[7], line_no), parse_int(f[8], line_no),
              parse_int(f[9], line_no)};
    MocaAssessment check(s.moca);
    if (label_from_moca(check) != s.label) {
      throw ValidationError("labels csv line " + std::to_string(line_no) + ": label disagrees with MoCA total");
    }
    out.push_back(std::move(s));
  }
  return out;
}

void write_feature_table(const std::filesystem::path& dir, const FeatureTable& table) {
  std::filesystem::create_directories(dir);
  const auto stem = feature_table_stem(table.task, table.mode);
  std::vector<float> data(table.x.data().begin(), table.x.data().end());
  const auto cols = static_cast<std::uint32_t>(std::max<std::size_t>(table.x.cols(), 1));
  ingest::write_embedding_file(dir / (stem + ".vaef"),
                               EmbeddingMatrix(static_cast<std::uint32_t>(table.x.rows()), cols, std::move(data)));
  ingest::write_text_file(dir / (stem + ".labels.csv"), write_labels_csv(table.samples));
}

FeatureTable read_feature_table(const std::filesystem::path& dir, Task task, FeatureMode mode) {
  const auto stem = feature_table_stem(task, mode);
  const auto matrix = ingest::read_embedding_file(dir / (stem + ".vaef"));
  auto samples = parse_labels_csv(ingest::read_text_file(dir / (stem + ".labels.csv")));
  if (samples.size() != matrix.rows()) {
    throw ParseError(stem + ": " + std::to_string(matrix.rows()) + " matrix rows but " +
                     std::to_string(samples.size()) + " label rows");
  }
  FeatureTable table;
  table.task = task;
  table.mode = mode;
  table.x = Matrix(matrix.rows(), matrix.cols(),
                   std::vector<double>(matrix.data().begin(), matrix.data().end()));
  table.samples = std::move(samples);
  return table;
}

}  // namespace vamci::fusion
