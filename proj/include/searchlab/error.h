#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace searchlab {

enum class ErrorCode {
  kParse,
  kInvalidGraph,
  kInvalidArgument,
  kDisconnected,
  kBudgetExceeded,
  kRetriesExhausted,
  kMismatch,
  kIo,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this type so the CLI can turn
// them into machine-readable error objects.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace searchlab
