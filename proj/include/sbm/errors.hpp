#pragma once

#include <stdexcept>
#include <string>

namespace sbm {

// Raised when a sampler or enumerator would exceed its configured
// resource budget. Callers treat this as a runtime (not usage) error.
class budget_error : public std::runtime_error {
  public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sbm
