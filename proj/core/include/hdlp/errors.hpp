#ifndef HDLP_ERRORS_HPP
#define HDLP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hdlp {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class DimensionTooLarge : public Error {
  public:
    using Error::Error;
};

class LengthMismatch : public Error {
  public:
    using Error::Error;
};

class UnknownCode : public Error {
  public:
    using Error::Error;
};

class InvalidParameters : public Error {
  public:
    using Error::Error;
};

class InvalidRate : public Error {
  public:
    using Error::Error;
};

class UnknownConstraintId : public Error {
  public:
    using Error::Error;
};

class RemovalForbidden : public Error {
  public:
    using Error::Error;
};

class EvenSet : public Error {
  public:
    using Error::Error;
};

class DegreeTooLarge : public Error {
  public:
    using Error::Error;
};

class LpUnbounded : public Error {
  public:
    using Error::Error;
};

class NumericalFailure : public Error {
  public:
    using Error::Error;
};

class InfeasibleProblem : public Error {
  public:
    using Error::Error;
};

class UnknownPreset : public Error {
  public:
    using Error::Error;
};

class UnknownAutomorphisms : public Error {
  public:
    using Error::Error;
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

}  // namespace hdlp

#endif  // HDLP_ERRORS_HPP
