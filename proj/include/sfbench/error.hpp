#pragma once

#include <stdexcept>
#include <string>

namespace sfbench {

enum class ErrorKind {
  InvalidArgument,
  Config,
  Io,
  Parse,
  Runtime,
};

// Every failure raised by the library carries one of the kinds above so the
// C API can map it onto a stable status code.
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

}  // namespace sfbench
