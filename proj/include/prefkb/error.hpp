#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace prefkb {

/// Exit-code class used by the CLI: domain errors map to 1, usage/parse errors to 2.
enum class ErrorClass { Domain, Usage };

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, ErrorClass cls = ErrorClass::Domain)
      : std::runtime_error(what), class_(cls) {}

  ErrorClass error_class() const noexcept { return class_; }

 private:
  ErrorClass class_;
};

#define PREFKB_SIMPLE_ERROR(Name)                              \
  class Name : public Error {                                  \
   public:                                                     \
    explicit Name(const std::string& what) : Error(what) {}    \
  };

PREFKB_SIMPLE_ERROR(DuplicateConcept)
PREFKB_SIMPLE_ERROR(UnknownParent)
PREFKB_SIMPLE_ERROR(UnknownConcept)
PREFKB_SIMPLE_ERROR(DuplicateRelation)
PREFKB_SIMPLE_ERROR(UnknownRelation)
PREFKB_SIMPLE_ERROR(UnknownIndividual)
PREFKB_SIMPLE_ERROR(UnknownDescription)
PREFKB_SIMPLE_ERROR(UnknownOrder)
PREFKB_SIMPLE_ERROR(UnknownElement)
PREFKB_SIMPLE_ERROR(UnknownPreference)
PREFKB_SIMPLE_ERROR(FunctionalViolation)
PREFKB_SIMPLE_ERROR(TypeMismatch)
PREFKB_SIMPLE_ERROR(InvalidPattern)
PREFKB_SIMPLE_ERROR(InvalidArgument)
PREFKB_SIMPLE_ERROR(CrossOrderError)
PREFKB_SIMPLE_ERROR(NoApplicablePreference)
PREFKB_SIMPLE_ERROR(AmbiguousCause)
PREFKB_SIMPLE_ERROR(EvaluationError)
PREFKB_SIMPLE_ERROR(ReferenceError)
PREFKB_SIMPLE_ERROR(ValidationFailed)
PREFKB_SIMPLE_ERROR(IoError)

#undef PREFKB_SIMPLE_ERROR

/// Carries the offending path through the parent graph, child first.
class CycleIntroduced : public Error {
 public:
  CycleIntroduced(const std::string& what, std::vector<std::string> path)
      : Error(what), path_(std::move(path)) {}
  const std::vector<std::string>& path() const noexcept { return path_; }

 private:
  std::vector<std::string> path_;
};

/// Raised when a new leq pair would make two distinct elements mutually
/// ordered. The path starts and ends at the same element.
class CycleError : public Error {
 public:
  CycleError(const std::string& what, std::vector<std::string> path)
      : Error(what), path_(std::move(path)) {}
  const std::vector<std::string>& path() const noexcept { return path_; }

 private:
  std::vector<std::string> path_;
};

class NoUniqueMatch : public Error {
 public:
  NoUniqueMatch(const std::string& what, std::vector<std::string> candidates)
      : Error(what), candidates_(std::move(candidates)) {}
  const std::vector<std::string>& candidates() const noexcept { return candidates_; }

 private:
  std::vector<std::string> candidates_;
};

class AmbiguousPreference : public Error {
 public:
  AmbiguousPreference(const std::string& what, std::vector<std::string> preferences)
      : Error(what), preferences_(std::move(preferences)) {}
  const std::vector<std::string>& preferences() const noexcept { return preferences_; }

 private:
  std::vector<std::string> preferences_;
};

/// Query text error; line and column are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message,
              ErrorClass::Usage),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Knowledge-base document could not be parsed; location is a line:column
/// pair for syntax problems or a JSON pointer for schema problems.
class ParseError : public Error {
 public:
  ParseError(const std::string& location, const std::string& message)
      : Error(location + ": " + message, ErrorClass::Usage), location_(location) {}
  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

}  // namespace prefkb
