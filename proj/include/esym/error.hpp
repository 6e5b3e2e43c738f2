#pragma once

#include <stdexcept>
#include <string>

namespace esym {

/// Failure categories. The CLI maps these onto its exit codes.
enum class ErrorKind {
  Usage,             // bad arguments (index out of range, d = 0, empty grid)
  Domain,            // input outside the function's domain
  MalformedSpectrum, // complex roots that are not closed under conjugation
  DegenerateSpectrum,// repeated roots where simple roots are required
  Geometry,          // no admissible contour for the root configuration
  NumericalFailure,  // tolerance not met within the evaluation budget
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when an adaptive engine gives up; carries its best effort.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, double best_value, double estimate)
      : Error(ErrorKind::NumericalFailure, what),
        best_value_(best_value),
        estimate_(estimate) {}

  double best_value() const { return best_value_; }
  double estimate() const { return estimate_; }

 private:
  double best_value_;
  double estimate_;
};

/// A value with an absolute error estimate and the work spent on it.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
  long evaluations = 0;
};

}  // namespace esym
