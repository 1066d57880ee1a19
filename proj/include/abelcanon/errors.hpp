#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "abelcanon/integer.hpp"

namespace abelcanon {

/// Malformed user input: group descriptions and element literals.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Element literal with the wrong arity or a bad token.
class ElementError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Valid input that the requested operation cannot handle.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InfiniteClasses : public DomainError {
 public:
  InfiniteClasses()
      : DomainError("group has a free factor: infinitely many automorphism classes") {}
};

class InfiniteGroup : public DomainError {
 public:
  InfiniteGroup() : DomainError("group has a free factor: orbit enumeration needs a finite group") {}
};

class CapExceeded : public DomainError {
 public:
  CapExceeded(const std::string& what, Integer required, Integer cap)
      : DomainError(what + ": need " + required.get_str() + ", cap is " + cap.get_str()),
        required_(std::move(required)),
        cap_(std::move(cap)) {}

  const Integer& required() const noexcept { return required_; }
  const Integer& cap() const noexcept { return cap_; }

 private:
  Integer required_;
  Integer cap_;
};

}  // namespace abelcanon
