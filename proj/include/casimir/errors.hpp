#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A direction or line whose chart coordinate is the point at infinity.
class PointAtInfinity : public Error {
 public:
  using Error::Error;
};

// A ray that never meets the mirror it was asked to bounce off.
class NoIntersection : public Error {
 public:
  using Error::Error;
};

// The requested closed orbit does not exist for the given inputs.
class PathNotFound : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double estimate, double error)
      : Error(what), estimate_(estimate), error_(error) {}

  double estimate() const { return estimate_; }
  double error() const { return error_; }

 private:
  double estimate_;
  double error_;
};

}  // namespace casimir
