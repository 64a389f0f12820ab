#pragma once

#include <stdexcept>
#include <string>

namespace quatlat {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed form input (bad token count, non-integer token, out of range).
class InvalidForm : public Error {
 public:
  using Error::Error;
};

class NotIntegral : public InvalidForm {
 public:
  using InvalidForm::InvalidForm;
};

class NotPositiveDefinite : public InvalidForm {
 public:
  using InvalidForm::InvalidForm;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class PrecisionTooLow : public PreconditionViolated {
 public:
  using PreconditionViolated::PreconditionViolated;
};

class Singular : public PreconditionViolated {
 public:
  using PreconditionViolated::PreconditionViolated;
};

/// An enumeration or counting budget was exhausted.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// A linear congruence system that theory says is consistent was not.
class Inconsistent : public Error {
 public:
  using Error::Error;
};

class NoEscalatorFound : public Error {
 public:
  using Error::Error;
};

}  // namespace quatlat
