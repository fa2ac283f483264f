#include "xorsat/errors.hpp"

#include <utility>

namespace xorsat {

const char* to_string(ParseErrorKind kind) noexcept {
  switch (kind) {
    case ParseErrorKind::kMalformedHeader:
      return "malformed header";
    case ParseErrorKind::kMalformedLine:
      return "malformed line";
    case ParseErrorKind::kRepeatedVariable:
      return "repeated variable";
    case ParseErrorKind::kQOutOfRange:
      return "q out of range";
    case ParseErrorKind::kLiteralOutOfRange:
      return "literal out of range";
    case ParseErrorKind::kCountMismatch:
      return "count mismatch";
    case ParseErrorKind::kNodeOutOfRange:
      return "node out of range";
    case ParseErrorKind::kInvalidEdge:
      return "invalid edge";
  }
  return "unknown";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail)
    : std::runtime_error("line " + std::to_string(line) + ": " + to_string(kind) + ": " + detail),
      kind_(kind),
      line_(line) {}

GuardExceeded::GuardExceeded(std::string guard, std::size_t value, std::size_t limit)
    : std::runtime_error("guard exceeded: " + guard + " = " + std::to_string(value) +
                         " (limit " + std::to_string(limit) + ")"),
      guard_(std::move(guard)),
      value_(value),
      limit_(limit) {}

}  // namespace xorsat
