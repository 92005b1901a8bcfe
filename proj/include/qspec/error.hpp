#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qspec {

enum class ErrorCode {
  DimensionMismatch,
  RelationViolated,
  ZeroQ,
  NonContractiveQ,
  EigensolverFailure,
  TruncationMismatch,
  QMismatch,
  ShapeMismatch,
  NotAComplex,
  RankAmbiguous,
  OffAxisPoint,
  GeometryPreconditionFailed,
  NotNilpotent,
  UnknownObject,
  NotALattice,
  FunctorialityViolated,
  BasisNotCovering,
  OracleIncomplete,
  InvalidInput,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qspec
