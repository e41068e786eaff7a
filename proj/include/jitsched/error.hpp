#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace jitsched {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated an operation precondition (unknown id, bad index, wrong m).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A checked 64-bit sum or product left the signed range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// An explicit search or enumeration budget was exhausted.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A supplied witness (clique, assignment) does not certify its source object.
class WitnessError : public Error {
 public:
  using Error::Error;
};

/// Domain object fails its structural invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed text document.
class ParseError : public Error {
 public:
  using Error::Error;
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw OverflowError("integer overflow in " + std::to_string(a) + " + " + std::to_string(b));
  }
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) {
    throw OverflowError("integer overflow in " + std::to_string(a) + " - " + std::to_string(b));
  }
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError("integer overflow in " + std::to_string(a) + " * " + std::to_string(b));
  }
  return r;
}

}  // namespace jitsched
