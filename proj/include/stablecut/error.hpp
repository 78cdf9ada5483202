#pragma once

#include <stdexcept>
#include <string>

namespace stablecut {

enum class ErrorCode {
  SelfLoop,
  DuplicateEdge,
  NonPositiveWeight,
  UnknownEdge,
  UnknownNode,
  InvalidPartition,
  NotSymmetric,
  NoConvergence,
  Disconnected,
  DisconnectedSpeciesGraph,
  TooSmall,
  TooLarge,
  NotBipartition,
  PatchSetMismatch,
  BadParams,
  NotEquilibrium,
  SinglePatch,
  ParseError,
};

/// All library failures throw this; `code` identifies the condition so
/// callers (and the CLI exit-code mapping) can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

const char* error_code_name(ErrorCode code);

}  // namespace stablecut
