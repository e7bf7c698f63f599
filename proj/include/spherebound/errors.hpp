#pragma once

#include <stdexcept>
#include <string>

namespace spherebound {

/// Dimension outside the supported range, or two objects whose dimensions
/// disagree. Value-domain violations (q < 1, x <= 0, ...) use
/// std::domain_error instead.
class DimensionError : public std::invalid_argument {
public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace spherebound
