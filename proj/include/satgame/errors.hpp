#ifndef SATGAME_ERRORS_HPP
#define SATGAME_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace satgame {

/// Invalid player index, action index, dimension or parameter.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Profile space (or derived structure) larger than the configured cap.
class CapacityError : public std::length_error {
 public:
  CapacityError(const std::string& what, std::size_t cap)
      : std::length_error(what + " exceeds cap of " + std::to_string(cap)),
        cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

/// Operation precondition does not hold for the given game.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed input document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace satgame

#endif  // SATGAME_ERRORS_HPP
