#pragma once

#include <stdexcept>
#include <string>

namespace symg {

// Failure classes used across the library.  Codes marked "cap" are resource
// guards (configured limits), not input mistakes; callers that map failures
// to process exit codes treat the two groups differently.
enum class Errc {
  NotOddPrime,
  DegreeOutOfRange,
  MixedFields,
  DivisionByZero,
  AmbientMismatch,
  NotAGroup,
  BadAction,
  TooManyClasses,
  NotHomomorphism,
  SingularGenerator,
  NotSubgroup,
  GroupMismatch,
  ModularCase,
  PDividesExponent,
  PDividesOrder,
  NotAnExtension,
  CapExceeded,     // cap
  Inconclusive,    // cap
  OracleTooLarge,  // cap
  NotAlternating,
  Degenerate,
  NotInvariant,
  NotIsotropic,
  NotAnisotropic,
  NoneFound,
  Infeasible,
  InvalidInput,
  Internal,
};

const char* errc_name(Errc c);
bool errc_is_cap(Errc c);

class SymgError : public std::runtime_error {
 public:
  SymgError(Errc code, const std::string& what)
      : std::runtime_error(what), code(code) {}
  Errc code;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw SymgError(code, what);
}

inline void require(bool ok, Errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace symg
