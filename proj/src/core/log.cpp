#include "vamci/core/log.hpp"

#include <iostream>

namespace vamci {
namespace {

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

WarningSink& current_sink() {
  static WarningSink sink;
  return sink;
}

}  // namespace

void warn(std::string_view message) {
  std::lock_guard<std::mutex> lock(sink_mutex());
  auto& sink = current_sink();
  if (sink) {
    sink(message);
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

WarningSink set_warning_sink(WarningSink sink) {
  std::lock_guard<std::mutex> lock(sink_mutex());
  auto previous = std::move(current_sink());
  current_sink() = std::move(sink);
  return previous;
}

WarningCapture::WarningCapture() {
  previous_ = set_warning_sink([this](std::string_view msg) {
    std::lock_guard<std::mutex> lock(mutex_);
    messages_.emplace_back(msg);
  });
}

WarningCapture::~WarningCapture() { set_warning_sink(std::move(previous_)); }

std::vector<std::string> WarningCapture::messages() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return messages_;
}

bool WarningCapture::contains(std::string_view needle) const {
  std::lock_guard<std::mutex> lock(mutex_);
  for (const auto& m : messages_) {
    if (m.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace vamci
