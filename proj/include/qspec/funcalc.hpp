#pragma once

#include <optional>
#include <string>

#include "qspec/qpair.hpp"
#include "qspec/qseries.hpp"
#include "qspec/qtopology.hpp"

namespace qspec {

struct Admissibility {
  bool admissible = true;
  /// A point of the Putinar spectrum whose closure is not inside U.
  std::optional<AxisPoint> witness;
  std::string diagnostic;
};

struct CalculusResult {
  Matrix value;
  std::optional<Admissibility> admissibility;
  /// ||S^k||_max for k = y_order.
  double nilpotency_residual = 0.0;
};

/// f(T, S) = sum_j f_j(T) S^j. Throws QMismatch if q differs and NotNilpotent
/// unless S^k vanishes within rank_tol for k = f.y_order().
CalculusResult evaluate(const QSeries& f, const QPair& pair, const ToleranceConfig& cfg = {});

struct HomomorphismReport {
  double residual = 0.0;
  /// 1 + ||f(T,S)||_F ||g(T,S)||_F
  double scale = 1.0;
};

/// ||(f g)(T, S) - f(T, S) g(T, S)||_max. The x-box is widened to 2m - 1
/// before multiplying so that no product term is dropped in x.
HomomorphismReport homomorphism_check(const QSeries& f, const QSeries& g, const QPair& pair,
                                      const ToleranceConfig& cfg = {});

/// Whether U contains the Putinar spectrum of the pair for the geometry.
/// Generators are checked one at a time: saturated opens contain whole
/// backward orbits, while the closure of the generic point is a whole axis.
Admissibility calculus_admissible(const QPair& pair, const OpenSet& u, Geometry geometry,
                                  const ToleranceConfig& cfg = {});

}  // namespace qspec
