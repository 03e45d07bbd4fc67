#pragma once

#include <stdexcept>
#include <string>

namespace wittlab {

// Invalid input for an otherwise well-formed request (non-prime p, level
// mismatch, ring mismatch, ...). CLI exit code 2.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Working precision, window or V-exponent cap exhausted. CLI exit code 3.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A broken internal invariant, e.g. an inexact division while solving the
// ghost recursion. Never caused by user input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed literal or JSON document. CLI exit code 1.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or corrupt on-disk polynomial cache.
class CacheError : public std::runtime_error {
 public:
  CacheError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace wittlab
