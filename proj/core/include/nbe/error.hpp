#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nbe {

enum class Errc {
  ContextMismatch,
  IndexOutOfRange,
  TypeMismatch,
  UnboundVariable,
  BranchTypeDisagreement,
  PolarityViolation,
  ShapeMismatch,
  DomainTooLarge,
  GenerationExhausted,
  ParseError,
  NonExhaustivePatterns,
  OverlappingPatterns,
  NonAtomicVarPattern,
  ValidationFailure,
};

std::string_view to_string(Errc code);

// Errors that can only arise from a bug in this library (ill-scoped
// intermediate data, a normal form that fails its grammar).
bool is_internal(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

struct SourceLocation {
  int line = 1;
  int column = 1;
};

class ParseError : public Error {
 public:
  ParseError(SourceLocation loc, std::string found, std::vector<std::string> expected);
  const SourceLocation& location() const noexcept { return loc_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  SourceLocation loc_;
  std::vector<std::string> expected_;
};

[[noreturn]] void fail(Errc code, const std::string& message);

}  // namespace nbe
