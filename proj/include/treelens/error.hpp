#pragma once

#include <stdexcept>
#include <string>

namespace treelens {

// All library failures surface as Error with a plain-text reason.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& reason) : std::runtime_error(reason) {}
};

}  // namespace treelens
