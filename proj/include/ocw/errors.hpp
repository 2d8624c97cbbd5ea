#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ocw {

/// Malformed word text. `position` is the 0-based offset of the offending character.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Bad user input that is not a syntax problem: repeated variables, arity
/// mismatches, non-normal bindings, invalid permutations, schema violations.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration or closure grew past its configured cap.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, std::size_t count)
      : std::runtime_error(what + ": cap exceeded (" + std::to_string(count) + ")"),
        count_(count) {}

  std::size_t count() const noexcept { return count_; }

 private:
  std::size_t count_;
};

}  // namespace ocw
