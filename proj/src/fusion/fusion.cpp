#include "vamci/fusion/fusion.hpp"

#include <cmath>
#include <string>

namespace vamci::fusion {

std::string_view to_string(FeatureMode mode) {
  switch (mode) {
    case FeatureMode::intent: return "INTENT";
    case FeatureMode::audio: return "AUDIO";
    case FeatureMode::textual: return "TEXTUAL";
    case FeatureMode::ff1: return "FF1";
    case FeatureMode::ff2: return "FF2";
    case FeatureMode::ff3: return "FF3";
    case FeatureMode::ff4: return "FF4";
  }
  return "?";
}

std::optional<FeatureMode> parse_feature_mode(std::string_view name) {
  for (const auto m : kFeatureModes) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

std::string_view to_string(Component c) {
  switch (c) {
    case Component::intent: return "intent";
    case Component::audio: return "audio";
    case Component::textual: return "textual";
  }
  return "?";
}

std::vector<Component> mode_components(FeatureMode mode) {
  using C = Component;
  switch (mode) {
    case FeatureMode::intent: return {C::intent};
    case FeatureMode::audio: return {C::audio};
    case FeatureMode::textual: return {C::textual};
    case FeatureMode::ff1: return {C::intent, C::audio};
    case FeatureMode::ff2: return {C::intent, C::textual};
    case FeatureMode::ff3: return {C::audio, C::textual};
    case FeatureMode::ff4: return {C::intent, C::audio, C::textual};
  }
  return {};
}

std::vector<ComponentSlice> feature_layout(FeatureMode mode, std::size_t anchor_count,
                                           std::size_t audio_width, std::size_t textual_width) {
  std::vector<ComponentSlice> out;
  std::size_t offset = 0;
  for (const auto c : mode_components(mode)) {
    const std::size_t width = c == Component::intent  ? intent::intent_feature_dim(anchor_count)
                              : c == Component::audio ? audio_width
                                                      : textual_width;
    out.push_back({c, offset, width});
    offset += width;
  }
  return out;
}

std::size_t feature_dim(FeatureMode mode, std::size_t anchor_count, std::size_t audio_width,
                        std::size_t textual_width) {
  std::size_t dim = 0;
  for (const auto& s : feature_layout(mode, anchor_count, audio_width, textual_width)) dim += s.width;
  return dim;
}

MissingComponentError::MissingComponentError(FeatureMode mode, Component missing)
    : ValidationError("feature mode " + std::string(to_string(mode)) + " requires the " +
                      std::string(to_string(missing)) + " modality, which is not available"),
      component_(missing) {}

std::vector<double> mean_embedding(const EmbeddingMatrix& m) {
  if (m.rows() == 0) throw ValidationError("mean_embedding: matrix has no rows");
  std::vector<double> sum(m.cols(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) sum[c] += row[c];
  }
  for (auto& v : sum) v /= static_cast<double>(m.rows());
  return sum;
}

FeatureVector build_feature_vector(const FeatureComponents& parts, FeatureMode mode) {
  FeatureVector out{mode, {}};
  for (const auto c : mode_components(mode)) {
    switch (c) {
      case Component::intent: {
        if (!parts.intent) throw MissingComponentError(mode, c);
        for (const auto q : parts.intent->qty) out.values.push_back(static_cast<double>(q));
        out.values.insert(out.values.end(), parts.intent->qlt.begin(), parts.intent->qlt.end());
        break;
      }
      case Component::audio:
        if (!parts.audio_mean) throw MissingComponentError(mode, c);
        out.values.insert(out.values.end(), parts.audio_mean->begin(), parts.audio_mean->end());
        break;
      case Component::textual:
        if (!parts.textual_mean) throw MissingComponentError(mode, c);
        out.values.insert(out.values.end(), parts.textual_mean->begin(), parts.textual_mean->end());
        break;
    }
  }
  for (const auto v : out.values) {
    if (!std::isfinite(v)) throw ValidationError("non-finite value in feature vector");
  }
  return out;
}

FeatureComponents session_components(const Session& session, const intent::AnchorSet* anchors) {
  FeatureComponents parts;
  if (anchors) {
    if (const auto& sentence = session.embedding(Modality::sentence)) {
      parts.intent = intent::intent_features(*anchors, *sentence);
    }
  }
  if (const auto& audio = session.embedding(Modality::audio); audio && audio->rows() > 0) {
    parts.audio_mean = mean_embedding(*audio);
  }
  if (const auto& textual = session.embedding(Modality::textual); textual && textual->rows() > 0) {
    parts.textual_mean = mean_embedding(*textual);
  }
  return parts;
}

}  // namespace vamci::fusion
