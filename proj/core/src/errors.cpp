#include "symg/errors.hpp"

namespace symg {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotOddPrime: return "NotOddPrime";
    case Errc::DegreeOutOfRange: return "DegreeOutOfRange";
    case Errc::MixedFields: return "MixedFields";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::AmbientMismatch: return "AmbientMismatch";
    case Errc::NotAGroup: return "NotAGroup";
    case Errc::BadAction: return "BadAction";
    case Errc::TooManyClasses: return "TooManyClasses";
    case Errc::NotHomomorphism: return "NotHomomorphism";
    case Errc::SingularGenerator: return "SingularGenerator";
    case Errc::NotSubgroup: return "NotSubgroup";
    case Errc::GroupMismatch: return "GroupMismatch";
    case Errc::ModularCase: return "ModularCase";
    case Errc::PDividesExponent: return "PDividesExponent";
    case Errc::PDividesOrder: return "PDividesOrder";
    case Errc::NotAnExtension: return "NotAnExtension";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::Inconclusive: return "Inconclusive";
    case Errc::OracleTooLarge: return "OracleTooLarge";
    case Errc::NotAlternating: return "NotAlternating";
    case Errc::Degenerate: return "Degenerate";
    case Errc::NotInvariant: return "NotInvariant";
    case Errc::NotIsotropic: return "NotIsotropic";
    case Errc::NotAnisotropic: return "NotAnisotropic";
    case Errc::NoneFound: return "NoneFound";
    case Errc::Infeasible: return "Infeasible";
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

bool errc_is_cap(Errc c) {
  return c == Errc::CapExceeded || c == Errc::Inconclusive || c == Errc::OracleTooLarge;
}

}  // namespace symg
