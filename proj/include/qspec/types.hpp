#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qspec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Numerical tolerances shared by every module.
///
/// rank_tol is relative to the largest singular value of the matrix whose rank
/// is being decided; point_match_tol is an absolute-plus-relative distance.
struct ToleranceConfig {
  double relation_tol = 1e-10;
  double rank_tol = 1e-9;
  double point_match_tol = 1e-8;

  /// Throws Error(InvalidInput) unless all three are strictly positive.
  void validate() const;
};

double max_norm(const Matrix& m);

/// |a - b| <= tol * (1 + max(|a|, |b|)).
bool points_match(Complex a, Complex b, double tol);

}  // namespace qspec
