#include "qspec/error.hpp"

#include <cmath>

#include "qspec/types.hpp"

namespace qspec {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::RelationViolated: return "RelationViolated";
    case ErrorCode::ZeroQ: return "ZeroQ";
    case ErrorCode::NonContractiveQ: return "NonContractiveQ";
    case ErrorCode::EigensolverFailure: return "EigensolverFailure";
    case ErrorCode::TruncationMismatch: return "TruncationMismatch";
    case ErrorCode::QMismatch: return "QMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotAComplex: return "NotAComplex";
    case ErrorCode::RankAmbiguous: return "RankAmbiguous";
    case ErrorCode::OffAxisPoint: return "OffAxisPoint";
    case ErrorCode::GeometryPreconditionFailed: return "GeometryPreconditionFailed";
    case ErrorCode::NotNilpotent: return "NotNilpotent";
    case ErrorCode::UnknownObject: return "UnknownObject";
    case ErrorCode::NotALattice: return "NotALattice";
    case ErrorCode::FunctorialityViolated: return "FunctorialityViolated";
    case ErrorCode::BasisNotCovering: return "BasisNotCovering";
    case ErrorCode::OracleIncomplete: return "OracleIncomplete";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void ToleranceConfig::validate() const {
  if (!(relation_tol > 0) || !(rank_tol > 0) || !(point_match_tol > 0)) {
    throw Error(ErrorCode::InvalidInput, "tolerances must be strictly positive");
  }
}

double max_norm(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool points_match(Complex a, Complex b, double tol) {
  return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

}  // namespace qspec
