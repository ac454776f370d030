#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rankineq {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Operands live over different fields or ambient spaces, or shapes disagree.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

// A size or enumeration limit would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Subspaces that were expected to form a complementary tuple do not.
class InvalidTuple : public Error {
 public:
  using Error::Error;
};

// Hypothesis of the complementary refinement fails at part `index` (0-based).
class PreconditionViolation : public Error {
 public:
  PreconditionViolation(const std::string& what, std::size_t index)
      : Error(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class SeedValidationError : public Error {
 public:
  enum class Reason { not_square, non_binary_entry, det_abs_too_small, has_full_support_column };
  SeedValidationError(Reason reason, const std::string& what) : Error(what), reason_(reason) {}
  Reason reason() const { return reason_; }

 private:
  Reason reason_;
};

class UnmappedVariable : public Error {
 public:
  using Error::Error;
};

class UnknownParticipant : public Error {
 public:
  using Error::Error;
};

}  // namespace rankineq
