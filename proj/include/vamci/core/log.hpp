#pragma once

#include <functional>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace vamci {

using WarningSink = std::function<void(std::string_view)>;

// Reports a non-fatal condition. Default sink writes "warning: ..." to stderr.
void warn(std::string_view message);

// Installs a new sink and returns the previous one. An empty sink restores the default.
WarningSink set_warning_sink(WarningSink sink);

// Collects warnings for the lifetime of the object (tests, CLI summaries).
class WarningCapture {
 public:
  WarningCapture();
  ~WarningCapture();
  WarningCapture(const WarningCapture&) = delete;
  WarningCapture& operator=(const WarningCapture&) = delete;

  std::vector<std::string> messages() const;
  bool contains(std::string_view needle) const;

 private:
  mutable std::mutex mutex_;
  std::vector<std::string> messages_;
  WarningSink previous_;
};

}  // namespace vamci
