#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xorsat {

enum class ParseErrorKind {
  kMalformedHeader,
  kMalformedLine,
  kRepeatedVariable,
  kQOutOfRange,
  kLiteralOutOfRange,
  kCountMismatch,
  kNodeOutOfRange,
  kInvalidEdge,
};

const char* to_string(ParseErrorKind kind) noexcept;

/// Input text rejected by one of the file parsers. `line` is 1-based; 0 means
/// the problem concerns the file as a whole.
class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail);

  ParseErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
};

/// A size guard on an exponential routine was exceeded.
class GuardExceeded : public std::runtime_error {
 public:
  GuardExceeded(std::string guard, std::size_t value, std::size_t limit);

  const std::string& guard() const noexcept { return guard_; }
  std::size_t value() const noexcept { return value_; }
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::string guard_;
  std::size_t value_;
  std::size_t limit_;
};

class GenerationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace xorsat
