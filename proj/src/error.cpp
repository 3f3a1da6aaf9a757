#include "trajnyq/error.hpp"

namespace trajnyq {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::UnboundedBody: return "UnboundedBody";
    case ErrorKind::DegenerateBody: return "DegenerateBody";
    case ErrorKind::AsymmetricBody: return "AsymmetricBody";
    case ErrorKind::EmptySlice: return "EmptySlice";
    case ErrorKind::SingularBasis: return "SingularBasis";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::CollinearParts: return "CollinearParts";
    case ErrorKind::SymmetryRequired: return "SymmetryRequired";
    case ErrorKind::EnumerationOverflow: return "EnumerationOverflow";
    case ErrorKind::NonIsotropicOmega: return "NonIsotropicOmega";
    case ErrorKind::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case ErrorKind::EmptyInterior: return "EmptyInterior";
    case ErrorKind::EpsTooCoarse: return "EpsTooCoarse";
    case ErrorKind::NearCosetAmbiguity: return "NearCosetAmbiguity";
    case ErrorKind::UnitCellPresent: return "UnitCellPresent";
    case ErrorKind::InconsistentSystem: return "InconsistentSystem";
    case ErrorKind::ReconstructionImpossible: return "ReconstructionImpossible";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::vector<long> witness)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      witness_(std::move(witness)) {}

}  // namespace trajnyq
