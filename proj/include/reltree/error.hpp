#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace reltree {

enum class ErrorKind {
  InputEncoding,
  Format,
  EmptyQuery,
  NotFound,
  DuplicateId,
  Consistency,
  Domain,
  NoMatch,
  QrelsConsistency,
  UnsupportedVersion,
  Io,
  Config,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this one exception type; the
// kind lets callers (CLI, HTTP layer) map to exit codes and status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace reltree
