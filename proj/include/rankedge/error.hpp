#pragma once

#include <stdexcept>
#include <string>

namespace rankedge {

enum class ErrorKind {
  Usage,
  InputValidity,
  Degenerate,
  SizeLimit,
  Numeric,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace rankedge
