#pragma once

#include <stdexcept>
#include <string>

namespace factorlat {

enum class ErrorKind {
  InvalidGroup,
  GroupMismatch,
  TooLarge,
  Unsupported,
  NotFundamental,
  InvalidForm,
  InvalidPrime,
  NoFiniteClass,
  NotAmbiguous,
  InvalidInput,
  ExplicitUnavailable,
  NoPartition,
  Undefined,
  Io,
  Internal,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

}  // namespace factorlat
