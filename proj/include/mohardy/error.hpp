#pragma once

#include <stdexcept>
#include <string>

namespace mohardy {

enum class ErrorKind {
  Parse,         // malformed CSV / JSON input
  Precondition,  // a documented precondition does not hold
  Io,            // file system failure
  Invariant,     // a post-hoc property check failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::Precondition, what);
}

}  // namespace mohardy
