#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace kreingraph {

/// Domain error carrying a machine-readable code (e.g. "NOT_CONNECTED").
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace kreingraph
