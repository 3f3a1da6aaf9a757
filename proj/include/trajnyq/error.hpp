#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace trajnyq {

enum class ErrorKind {
  InvalidInput,
  UnboundedBody,
  DegenerateBody,
  AsymmetricBody,
  EmptySlice,
  SingularBasis,
  WindowTooSmall,
  CollinearParts,
  SymmetryRequired,
  EnumerationOverflow,
  NonIsotropicOmega,
  EpsilonOutOfRange,
  EmptyInterior,
  EpsTooCoarse,
  NearCosetAmbiguity,
  UnitCellPresent,
  InconsistentSystem,
  ReconstructionImpossible,
  ConfigError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::vector<long> witness = {});

  ErrorKind kind() const noexcept { return kind_; }
  // Integer witness, e.g. the corner of an offending unit cell.
  const std::vector<long>& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<long> witness_;
};

}  // namespace trajnyq
