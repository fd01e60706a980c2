#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "vamci/core/embedding.hpp"
#include "vamci/core/error.hpp"
#include "vamci/core/model.hpp"
#include "vamci/intent/anchors.hpp"
#include "vamci/intent/intent_features.hpp"

namespace vamci::fusion {

// FF1 = intent+audio, FF2 = intent+textual, FF3 = audio+textual, FF4 = all three.
enum class FeatureMode { intent, audio, textual, ff1, ff2, ff3, ff4 };
inline constexpr std::array<FeatureMode, 7> kFeatureModes = {
    FeatureMode::intent, FeatureMode::audio, FeatureMode::textual, FeatureMode::ff1,
    FeatureMode::ff2,    FeatureMode::ff3,   FeatureMode::ff4};

enum class Component { intent, audio, textual };

std::string_view to_string(FeatureMode mode);  // "INTENT", "AUDIO", ..., "FF4"
std::optional<FeatureMode> parse_feature_mode(std::string_view name);
std::string_view to_string(Component c);

// Components of a mode in concatenation order (intent, audio, textual).
std::vector<Component> mode_components(FeatureMode mode);

struct ComponentSlice {
  Component component;
  std::size_t offset;
  std::size_t width;
};

// Offsets of each component inside a mode's vector.
std::vector<ComponentSlice> feature_layout(FeatureMode mode, std::size_t anchor_count,
                                           std::size_t audio_width, std::size_t textual_width);
std::size_t feature_dim(FeatureMode mode, std::size_t anchor_count, std::size_t audio_width,
                        std::size_t textual_width);

class MissingComponentError : public ValidationError {
 public:
  MissingComponentError(FeatureMode mode, Component missing);
  Component component() const { return component_; }

 private:
  Component component_;
};

// Session-level inputs to fusion; any subset may be present.
struct FeatureComponents {
  std::optional<intent::IntentFeatureVector> intent;
  std::optional<std::vector<double>> audio_mean;
  std::optional<std::vector<double>> textual_mean;
};

struct FeatureVector {
  FeatureMode mode;
  std::vector<double> values;
  std::size_t dim() const { return values.size(); }
};

// Column-wise mean over commands (double accumulation). Throws ValidationError if rows = 0.
std::vector<double> mean_embedding(const EmbeddingMatrix& m);

// Concatenates [qty, qlt, audio, textual] restricted to the mode's components.
FeatureVector build_feature_vector(const FeatureComponents& parts, FeatureMode mode);

// Computes every component the session can supply: intent from the sentence embeddings
// (requires anchors), means of the audio/textual embeddings.
FeatureComponents session_components(const Session& session, const intent::AnchorSet* anchors);

}  // namespace vamci::fusion
