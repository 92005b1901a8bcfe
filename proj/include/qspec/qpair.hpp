#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qspec/types.hpp"

namespace qspec {

/// Deformation parameter of the relation TS = q^{-1} ST.
///
/// Any 0 < |q| <= 1 is accepted (the relaxed mode). Operations that rely on
/// q-spiral topologies call require_contractive(), which rejects |q| = 1.
class QParameter {
 public:
  explicit QParameter(Complex value);

  Complex value() const { return value_; }
  Complex inverse() const { return 1.0 / value_; }
  bool is_contractive() const;
  bool is_unimodular() const { return !is_contractive(); }
  void require_contractive() const;

  friend bool operator==(const QParameter& a, const QParameter& b) { return a.value_ == b.value_; }

 private:
  Complex value_;
};

/// A validated q-commuting pair of dim x dim operators.
class QPair {
 public:
  std::size_t dim() const { return static_cast<std::size_t>(t_.rows()); }
  const Matrix& T() const { return t_; }
  const Matrix& S() const { return s_; }
  QParameter q() const { return q_; }
  const ToleranceConfig& tolerances() const { return cfg_; }
  /// Scaled residual ||TS - q^{-1}ST||_max / (1 + ||T||_F ||S||_F) measured at validation.
  double residual() const { return residual_; }

 private:
  QPair(Matrix t, Matrix s, QParameter q, ToleranceConfig cfg, double residual)
      : t_(std::move(t)), s_(std::move(s)), q_(q), cfg_(cfg), residual_(residual) {}

  friend QPair validate_qpair(Matrix T, Matrix S, QParameter q, const ToleranceConfig& cfg);

  Matrix t_;
  Matrix s_;
  QParameter q_;
  ToleranceConfig cfg_;
  double residual_;
};

double relation_residual(const Matrix& T, const Matrix& S, QParameter q);

QPair validate_qpair(Matrix T, Matrix S, QParameter q, const ToleranceConfig& cfg = {});

/// T = diag(t0, q^{-1} t0, ..., q^{-(n-1)} t0), S the down-shift.
QPair jordan_q_pair(Complex t0, std::size_t n, QParameter q);

/// Left multiplication by x and y on the first n monomials x^a y^b of the
/// quantum plane (graded order), truncated to that span. Both operators are
/// strictly upper triangular.
QPair nilpotent_q_pair(std::size_t n, QParameter q);

/// Eigenvalues deduplicated within point_match_tol, sorted lexicographically.
/// Eigenvalue groups that are numerically one defective eigenvalue are
/// reported once, at their mean.
std::vector<Complex> operator_spectrum(const Matrix& m, const ToleranceConfig& cfg = {});

/// Smallest k >= 1 with ||M^k||_max <= rank_tol * max(1, ||M||_F)^k, if any k <= dim.
std::optional<std::size_t> nilpotency_index(const Matrix& m, const ToleranceConfig& cfg = {});

inline bool is_nilpotent(const Matrix& m, const ToleranceConfig& cfg = {}) {
  return nilpotency_index(m, cfg).has_value();
}

}  // namespace qspec
