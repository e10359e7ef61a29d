#pragma once

#include <stdexcept>
#include <string>

namespace seqinv {

/// Raised for every contract violation in the library; `what()` carries the
/// short diagnostic ("non-invertible", "composition undefined", ...).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace seqinv
