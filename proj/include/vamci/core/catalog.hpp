#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vamci/core/model.hpp"

namespace vamci {

// One reference command and the intent keyword participants were given for it.
struct AnchorEntry {
  std::string anchor_text;
  std::string intent_text;
  std::optional<Category> category;  // the short replies ("yes", "pause", ...) have none

  friend bool operator==(const AnchorEntry&, const AnchorEntry&) = default;
};

// The 34 reading-task commands with their generation-task intents:
// 30 common commands across the six categories plus 4 short replies.
const std::vector<AnchorEntry>& default_anchor_catalog();

}  // namespace vamci
