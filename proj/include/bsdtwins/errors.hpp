// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <stdexcept>
#include <string>

namespace bsdtwins {

/// Base class of every error raised by the library. `code()` is a stable
/// machine-readable name used by the CLI error records.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define BSDTWINS_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& what) : Error(#Name, what) {}    \
  }

BSDTWINS_DEFINE_ERROR(FactorBudgetExceeded);
BSDTWINS_DEFINE_ERROR(NotASquare);
BSDTWINS_DEFINE_ERROR(SingularModel);
BSDTWINS_DEFINE_ERROR(NotShortForm);
BSDTWINS_DEFINE_ERROR(NotSquarefree);
BSDTWINS_DEFINE_ERROR(UndecidedAtDepth);
BSDTWINS_DEFINE_ERROR(NotIsogenous);
BSDTWINS_DEFINE_ERROR(Inconsistent);
BSDTWINS_DEFINE_ERROR(NegativeDiscriminantUnsupported);
BSDTWINS_DEFINE_ERROR(NetworkUnavailable);
BSDTWINS_DEFINE_ERROR(UnknownLabel);
BSDTWINS_DEFINE_ERROR(InvalidInput);

#undef BSDTWINS_DEFINE_ERROR

}  // namespace bsdtwins
