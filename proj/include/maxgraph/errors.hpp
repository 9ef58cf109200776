#pragma once

#include <stdexcept>
#include <string>

namespace maxgraph {

// Error taxonomy mirrored by the CLI exit codes:
//   validation_error -> 2, certificate_error -> 3, accuracy_error -> 4.
struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct certificate_error : std::runtime_error {
  explicit certificate_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct accuracy_error : std::runtime_error {
  explicit accuracy_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace maxgraph
