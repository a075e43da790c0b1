#pragma once

#include <stdexcept>
#include <string>

namespace cba {

// Input errors are caller mistakes (bad file, bad flag, bad precondition);
// internal errors indicate a bug or an unexpected environment failure.
enum class ErrorKind { Input, Io, Version, Internal };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_input(const std::string& msg) { throw Error(ErrorKind::Input, msg); }

}  // namespace cba
