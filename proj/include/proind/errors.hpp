#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace proind {

enum class ErrorKind {
  kNonFilteringIndex,
  kNonFunctorial,
  kIncompatibleMorphisms,
  kSectionMismatch,
  kConditionFails,
  kNoWitness,
  kNotBijective,
  kArityCapExceeded,
  kSizeCapExceeded,
  kNotDirected,
  kNotAscending,
  kNotCoarsening,
  kNotAnEquivalence,
  kNotAFunction,
  kBoundTooSmall,
  kNotDefinable,
  kInvalidArgument,
  kParse,
  kUnknownSetId,
  kInternalConsistency,
};

std::string_view error_kind_name(ErrorKind kind);

// All library failures are reported through this one exception type; the
// kind says which contract was violated and the message carries the witness.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind),
        message_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  // The message without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

// Parse errors carry the 1-based line number of the offending input line.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error(ErrorKind::kParse, "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace proind
