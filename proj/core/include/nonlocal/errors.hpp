#pragma once

#include <stdexcept>
#include <string>

namespace nonlocal {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Two objects with incompatible dimensions were combined.
class ShapeMismatch : public Error {
public:
  using Error::Error;
};

/// A setting pair carried no signal after background subtraction.
class ZeroBlock : public Error {
public:
  using Error::Error;
};

class InvalidParameter : public Error {
public:
  using Error::Error;
};

/// Vertex enumeration guard exceeded.
class TooLarge : public Error {
public:
  using Error::Error;
};

/// The LP/QP machinery failed (infeasible, unbounded, or iteration cap).
class LpFailure : public Error {
public:
  using Error::Error;
};

/// A signaling behavior was passed where a non-signaling one is required.
class SignalingInput : public Error {
public:
  using Error::Error;
};

/// The extension polytope V has no feasible point.
class InfeasibleV : public Error {
public:
  using Error::Error;
};

/// An iterative routine did not close its bounds within the iteration cap.
class NonConvergence : public Error {
public:
  NonConvergence(const std::string& what, double lower, double upper)
      : Error(what), lower_bound(lower), upper_bound(upper) {}
  explicit NonConvergence(const std::string& what)
      : Error(what), lower_bound(0), upper_bound(0) {}
  double lower_bound;
  double upper_bound;
};

/// File could not be parsed at all.
class ParseError : public Error {
public:
  using Error::Error;
};

/// File parsed but violates the counts schema.
class SchemaError : public Error {
public:
  using Error::Error;
};

class EmptyInput : public Error {
public:
  using Error::Error;
};

/// All theory values of a fit vanish; the regression is undetermined.
class DegenerateFit : public Error {
public:
  using Error::Error;
};

}  // namespace nonlocal
