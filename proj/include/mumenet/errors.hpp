#ifndef MUMENET_ERRORS_HPP
#define MUMENET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mumenet {

enum class ErrorCode {
  Io,
  Parse,
  Schema,
  UnknownKey,
  Generation,
  Validation,
  Model,
  Infeasible,
  Numerical,
  FractionalSolution,
  BudgetExceeded,
  ExternalSolver,
  CrossCheckMismatch,
  Causality,
  DuplicateId,
  Metadata,
  Handshake,
  UnknownUser,
  DuplicatePolicy,
  InsufficientSamples,
  BadArgument,
  Internal,
};

const char* error_code_name(ErrorCode code);

/// Base exception for all library failures. `where()` carries a field path
/// (config schema errors) or an object identifier when one exists.
class MumeError : public std::runtime_error {
 public:
  MumeError(ErrorCode code, std::string message, std::string where = {})
      : std::runtime_error(where.empty() ? message : where + ": " + message),
        code_(code),
        where_(std::move(where)) {}

  ErrorCode code() const { return code_; }
  const std::string& where() const { return where_; }

 private:
  ErrorCode code_;
  std::string where_;
};

inline MumeError io_error(const std::string& msg) { return {ErrorCode::Io, msg}; }
inline MumeError parse_error(const std::string& msg) { return {ErrorCode::Parse, msg}; }
inline MumeError schema_error(const std::string& path, const std::string& msg) {
  return {ErrorCode::Schema, msg, path};
}
inline MumeError unknown_key_error(const std::string& path) {
  return {ErrorCode::UnknownKey, "unknown key", path};
}

}  // namespace mumenet

#endif
