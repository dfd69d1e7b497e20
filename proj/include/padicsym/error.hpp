#pragma once

#include <stdexcept>
#include <string>

namespace padicsym {

// On the CLI, broken preconditions (InvalidArgument, SingularClass,
// UndefinedSignature, LengthExceedsN) exit with 2 and other errors with 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ZeroAtPrecision : public Error {
 public:
  using Error::Error;
};

class NotAUnit : public Error {
 public:
  using Error::Error;
};

// The requested invariant needs more p-adic digits than the ring carries.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

class PrecisionInsufficient : public Error {
 public:
  using Error::Error;
};

class SingularClass : public Error {
 public:
  using Error::Error;
};

class UndefinedSignature : public Error {
 public:
  using Error::Error;
};

class RepeatedSpecializationPoint : public Error {
 public:
  using Error::Error;
};

class LengthExceedsN : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ExpectedCountTooSmall : public Error {
 public:
  using Error::Error;
};

}  // namespace padicsym
