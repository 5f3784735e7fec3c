#include "nbe/error.hpp"

namespace nbe {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::ContextMismatch: return "ContextMismatch";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::TypeMismatch: return "TypeMismatch";
    case Errc::UnboundVariable: return "UnboundVariable";
    case Errc::BranchTypeDisagreement: return "BranchTypeDisagreement";
    case Errc::PolarityViolation: return "PolarityViolation";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::DomainTooLarge: return "DomainTooLarge";
    case Errc::GenerationExhausted: return "GenerationExhausted";
    case Errc::ParseError: return "ParseError";
    case Errc::NonExhaustivePatterns: return "NonExhaustivePatterns";
    case Errc::OverlappingPatterns: return "OverlappingPatterns";
    case Errc::NonAtomicVarPattern: return "NonAtomicVarPattern";
    case Errc::ValidationFailure: return "ValidationFailure";
  }
  return "Unknown";
}

bool is_internal(Errc code) {
  switch (code) {
    case Errc::ContextMismatch:
    case Errc::IndexOutOfRange:
    case Errc::PolarityViolation:
    case Errc::ShapeMismatch:
    case Errc::ValidationFailure:
      return true;
    default:
      return false;
  }
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

namespace {

std::string describe(const SourceLocation& loc, const std::string& found,
                     const std::vector<std::string>& expected) {
  std::string msg = std::to_string(loc.line) + ":" + std::to_string(loc.column) +
                    ": unexpected " + found;
  if (!expected.empty()) {
    msg += ", expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
  }
  return msg;
}

}  // namespace

ParseError::ParseError(SourceLocation loc, std::string found, std::vector<std::string> expected)
    : Error(Errc::ParseError, describe(loc, found, expected)),
      loc_(loc),
      expected_(std::move(expected)) {}

void fail(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace nbe
