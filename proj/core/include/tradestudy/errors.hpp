#pragma once

#include <stdexcept>
#include <string>

namespace tradestudy {

/// Base class for every error raised by the trade-study engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (YAML syntax, wrong node type, unknown enum literal).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates a domain invariant. Carries the offending
/// record (sensor id, mission, profile name) and field.
class ValidationError : public Error {
 public:
  ValidationError(std::string subject, std::string field, const std::string& message)
      : Error(subject + "." + field + ": " + message),
        subject_(std::move(subject)),
        field_(std::move(field)) {}

  const std::string& subject() const noexcept { return subject_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::string subject_;
  std::string field_;
};

/// A budget or selection problem with no admissible answer.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace tradestudy
