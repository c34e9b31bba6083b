#pragma once

#include <stdexcept>
#include <string>

namespace dendro {

// an input beyond the documented scale of an operation
class ScaleLimit : public std::runtime_error {
 public:
  explicit ScaleLimit(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dendro
