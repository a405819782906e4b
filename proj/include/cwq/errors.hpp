#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cwq {

enum class ErrorKind {
  InvalidDimension,
  InvalidConvention,
  InconsistentBasis,
  NotAState,
  DimensionMismatch,
  SizeLimit,
  OrderError,
  ShapeError,
  PurificationFailure,
  ScanError,
  Overflow,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Base exception for all library failures; `kind()` identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cwq
