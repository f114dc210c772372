#pragma once

#include <stdexcept>
#include <string>

namespace sgk {

enum class Errc {
  Parse = 1,
  InvalidInput = 2,
  Degenerate = 3,
  DimensionMismatch = 4,
  ParentMismatch = 5,
  Io = 6,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace sgk
