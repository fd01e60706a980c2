#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "vamci/core/log.hpp"

int main(int argc, char** argv) {
  // Simulated sessions trip the command-range warning constantly; tests that care about
  // warnings install their own capture.
  vamci::set_warning_sink([](std::string_view) {});
  doctest::Context context(argc, argv);
  return context.run();
}
