#pragma once

#include <cstddef>
#include <vector>

#include "qspec/exact.hpp"
#include "qspec/types.hpp"

namespace qspec {

/// 0 -> C^{d_0} -> C^{d_1} -> ... -> C^{d_L} -> 0 with maps[p] of shape d_{p+1} x d_p.
struct CochainComplex {
  std::vector<std::size_t> dims;
  std::vector<Matrix> maps;
};

struct ExactCochainComplex {
  std::vector<std::size_t> dims;
  std::vector<ExactMatrix> maps;
};

struct ComplexCheck {
  /// ||maps[p+1] * maps[p]||_max for each p.
  std::vector<double> residuals;
  /// residuals[p] / (1 + ||maps[p+1]||_F ||maps[p]||_F).
  std::vector<double> scaled;
  bool ok = true;
};

/// Throws ShapeMismatch on inconsistent shapes. ok is false when some scaled
/// residual exceeds cfg.rank_tol.
ComplexCheck check_complex(const CochainComplex& c, const ToleranceConfig& cfg = {});

struct RankInfo {
  std::size_t rank = 0;
  /// Some singular value lies within a factor 10 of the threshold.
  bool ambiguous = false;
  double sigma_max = 0.0;
};

/// Singular values above rank_tol * max(sigma_max, reference_sigma) count.
/// Matrices whose Gram matrix is well conditioned are certified full rank
/// without an SVD.
RankInfo numerical_rank(const Matrix& m, double rank_tol, double reference_sigma = 0.0);

struct HomologyReport {
  std::vector<std::size_t> dims;
  std::vector<std::size_t> ranks;
  double tol_used = 0.0;
  bool ambiguous = false;
};

/// Ranks are decided against the largest singular value over all maps of the
/// complex, so a map made of rounding noise has rank zero.
/// Never throws RankAmbiguous; inspect report.ambiguous instead.
HomologyReport analyze_homology(const CochainComplex& c, const ToleranceConfig& cfg = {});

/// Throws NotAComplex when check_complex fails and RankAmbiguous when any rank is ambiguous.
HomologyReport homology_dims(const CochainComplex& c, const ToleranceConfig& cfg = {});

bool is_exact(const CochainComplex& c, const ToleranceConfig& cfg = {});

/// Exact counterpart; throws NotAComplex unless every composite is exactly zero.
std::vector<std::size_t> exact_homology_dims(const ExactCochainComplex& c);

ExactCochainComplex to_exact(const CochainComplex& c);

}  // namespace qspec
