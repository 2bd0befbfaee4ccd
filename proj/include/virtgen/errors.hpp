#pragma once

#include <stdexcept>
#include <string>

namespace virtgen {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed group spec, family file or other textual input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A configured size limit would be exceeded. Raised instead of truncating.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what_cap, std::size_t value, std::size_t limit)
      : Error(what_cap + " cap exceeded: " + std::to_string(value) + " > " +
              std::to_string(limit)),
        value_(value),
        limit_(limit) {}

  std::size_t value() const noexcept { return value_; }
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t value_;
  std::size_t limit_;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace virtgen
