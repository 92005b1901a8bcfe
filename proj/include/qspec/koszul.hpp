#pragma once

#include <cstddef>
#include <vector>

#include "qspec/homology.hpp"
#include "qspec/qpair.hpp"

namespace qspec {

/// A character (l1, l2) of the quantum plane; l1 * l2 = 0.
struct AxisPoint {
  Complex l1{0.0, 0.0};
  Complex l2{0.0, 0.0};

  friend bool operator==(const AxisPoint& a, const AxisPoint& b) { return a.l1 == b.l1 && a.l2 == b.l2; }
};

enum class Axis { Origin, X, Y };

/// Lexicographic order on (re l1, im l1, re l2, im l2).
bool point_less(const AxisPoint& a, const AxisPoint& b);

bool points_match(const AxisPoint& a, const AxisPoint& b, double tol);

/// Throws OffAxisPoint unless |l1 l2| <= tol (1 + |l1|)(1 + |l2|).
Axis axis_of(const AxisPoint& p, double tol);

struct KoszulComplex {
  AxisPoint point;
  /// dims (n, 2n, n); maps[0] = delta2, maps[1] = delta1.
  CochainComplex complex;
};

/// 0 -> X -> X+X -> X -> 0 with
///   delta2 x = (-(S - q^{-1} l2) x, (q^{-1} T - l1) x),
///   delta1 (x1, x2) = (T - l1) x1 + (S - l2) x2.
KoszulComplex build_koszul(const QPair& pair, const AxisPoint& point);

/// Largest entry of delta1 * delta2 divided by 1 + ||delta1||_F ||delta2||_F.
double koszul_residual(const KoszulComplex& k);

enum class Verdict { Transversal, NotTransversal, Undecided };

struct TransversalityReport {
  Verdict verdict = Verdict::Transversal;
  HomologyReport homology;
};

/// Never throws RankAmbiguous; ambiguous ranks give Verdict::Undecided.
TransversalityReport transversality(const QPair& pair, const AxisPoint& point, const ToleranceConfig& cfg);

/// True iff the Koszul complex at point is exact. Throws RankAmbiguous.
bool is_transversal(const QPair& pair, const AxisPoint& point, const ToleranceConfig& cfg);

/// (mu, 0) for mu in sigma(T) and q^{-1} sigma(T), (0, nu) for nu in sigma(S)
/// and q sigma(S), and the origin; deduplicated and sorted.
std::vector<AxisPoint> candidate_points(const QPair& pair, const ToleranceConfig& cfg);

struct SpectrumResult {
  std::vector<AxisPoint> taylor;
  std::vector<AxisPoint> undecided;
};

/// Non-transversal candidates. Rejects q = 1, where the candidate set is not
/// known to contain the spectrum.
SpectrumResult taylor_spectrum(const QPair& pair, const ToleranceConfig& cfg);

struct GridScanReport {
  std::size_t points_tested = 0;
  /// Non-transversal grid points not matching any candidate.
  std::vector<AxisPoint> outside;
  std::size_t ambiguous = 0;
  double radius = 0.0;
};

/// Scans an n x n grid over [-R, R]^2 on each axis. Grid points that match a
/// candidate within point_match_tol are skipped. radius <= 0 picks
/// R = 1.25 max|candidate| + 0.5.
GridScanReport grid_scan(const QPair& pair, std::size_t n, const ToleranceConfig& cfg, double radius = 0.0);

}  // namespace qspec
