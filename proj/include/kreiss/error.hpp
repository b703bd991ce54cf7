#pragma once

#include <stdexcept>
#include <string>

namespace kreiss {

// Base for every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

// (lambda I - M) is numerically singular at the requested point.
class SingularResolvent : public Error {
 public:
  using Error::Error;
};

// Evaluation point coincides with a pole of a Blaschke factor or kernel.
class PoleHit : public Error {
 public:
  using Error::Error;
};

// The instance does not satisfy the hypotheses of the requested inequality.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

class SpectrumOnCircle : public Error {
 public:
  using Error::Error;
};

// Malformed input file; `field` names the offending JSON member.
class ParseError : public Error {
 public:
  ParseError(const std::string& field, const std::string& what)
      : Error(field + ": " + what), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace kreiss
