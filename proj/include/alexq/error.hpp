#pragma once

#include <stdexcept>
#include <string>

namespace alexq {

// Raised when user-supplied data violates a documented precondition
// (non-coprime multiplier, non-monic polynomial, non-bijective map, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised for malformed spec strings and command lines. `position` is the
// 0-based offset of the offending token in the input text, when known.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what, std::size_t position = npos)
      : std::runtime_error(what), position_(position) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace alexq
