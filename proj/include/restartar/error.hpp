#pragma once

#include <stdexcept>
#include <string>

namespace restartar {

enum class ErrorKind {
  InvalidArgument,  // caller broke a precondition
  Domain,           // argument outside a function's domain
  Infeasible,       // limit-law parameters violate the feasibility bound
  Config,           // malformed or inconsistent run configuration
  Runtime,          // simulation/numerics could not complete
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace restartar
