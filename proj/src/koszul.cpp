#include "qspec/koszul.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qspec/error.hpp"

namespace qspec {

namespace {

bool complex_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

void add_unique(std::vector<AxisPoint>& out, const AxisPoint& p, double tol) {
  for (const AxisPoint& o : out)
    if (points_match(o, p, tol)) return;
  out.push_back(p);
}

TransversalityReport verdict_from(const KoszulComplex& k, const ToleranceConfig& cfg) {
  TransversalityReport r;
  r.homology = analyze_homology(k.complex, cfg);
  if (r.homology.ambiguous) {
    r.verdict = Verdict::Undecided;
  } else {
    const bool exact = std::all_of(r.homology.dims.begin(), r.homology.dims.end(),
                                   [](std::size_t d) { return d == 0; });
    r.verdict = exact ? Verdict::Transversal : Verdict::NotTransversal;
  }
  return r;
}

}  // namespace

bool point_less(const AxisPoint& a, const AxisPoint& b) {
  if (a.l1 != b.l1) return complex_less(a.l1, b.l1);
  return complex_less(a.l2, b.l2);
}

bool points_match(const AxisPoint& a, const AxisPoint& b, double tol) {
  return points_match(a.l1, b.l1, tol) && points_match(a.l2, b.l2, tol);
}

Axis axis_of(const AxisPoint& p, double tol) {
  const double a = std::abs(p.l1);
  const double b = std::abs(p.l2);
  if (!std::isfinite(a) || !std::isfinite(b)) throw Error(ErrorCode::InvalidInput, "point is not finite");
  if (a * b > tol * (1.0 + a) * (1.0 + b)) {
    std::ostringstream msg;
    msg << "|l1 l2| = " << a * b << " is not zero within tolerance";
    throw Error(ErrorCode::OffAxisPoint, msg.str());
  }
  if (a <= tol && b <= tol) return Axis::Origin;
  return b <= a ? Axis::X : Axis::Y;
}

KoszulComplex build_koszul(const QPair& pair, const AxisPoint& point) {
  axis_of(point, pair.tolerances().point_match_tol);
  const Eigen::Index n = pair.T().rows();
  const Complex qi = pair.q().inverse();
  const Matrix id = Matrix::Identity(n, n);

  Matrix delta2(2 * n, n);
  delta2.topRows(n) = -(pair.S() - qi * point.l2 * id);
  delta2.bottomRows(n) = qi * pair.T() - point.l1 * id;
  Matrix delta1(n, 2 * n);
  delta1.leftCols(n) = pair.T() - point.l1 * id;
  delta1.rightCols(n) = pair.S() - point.l2 * id;

  KoszulComplex k;
  k.point = point;
  const auto un = static_cast<std::size_t>(n);
  k.complex.dims = {un, 2 * un, un};
  k.complex.maps = {std::move(delta2), std::move(delta1)};
  return k;
}

double koszul_residual(const KoszulComplex& k) {
  const Matrix& d2 = k.complex.maps[0];
  const Matrix& d1 = k.complex.maps[1];
  return max_norm(d1 * d2) / (1.0 + d1.norm() * d2.norm());
}

TransversalityReport transversality(const QPair& pair, const AxisPoint& point, const ToleranceConfig& cfg) {
  return verdict_from(build_koszul(pair, point), cfg);
}

bool is_transversal(const QPair& pair, const AxisPoint& point, const ToleranceConfig& cfg) {
  const TransversalityReport r = transversality(pair, point, cfg);
  if (r.verdict == Verdict::Undecided) {
    throw Error(ErrorCode::RankAmbiguous, "Koszul ranks are within the guard band");
  }
  return r.verdict == Verdict::Transversal;
}

std::vector<AxisPoint> candidate_points(const QPair& pair, const ToleranceConfig& cfg) {
  const Complex q = pair.q().value();
  std::vector<AxisPoint> out;
  add_unique(out, AxisPoint{}, cfg.point_match_tol);
  for (const Complex& mu : operator_spectrum(pair.T(), cfg)) {
    add_unique(out, AxisPoint{mu, 0.0}, cfg.point_match_tol);
    add_unique(out, AxisPoint{mu / q, 0.0}, cfg.point_match_tol);
  }
  for (const Complex& nu : operator_spectrum(pair.S(), cfg)) {
    add_unique(out, AxisPoint{0.0, nu}, cfg.point_match_tol);
    add_unique(out, AxisPoint{0.0, q * nu}, cfg.point_match_tol);
  }
  std::sort(out.begin(), out.end(), point_less);
  return out;
}

SpectrumResult taylor_spectrum(const QPair& pair, const ToleranceConfig& cfg) {
  cfg.validate();
  if (pair.q().value() == Complex(1.0, 0.0)) {
    throw Error(ErrorCode::InvalidInput, "q = 1: every point of C^2 is a character, axis candidates do not apply");
  }
  SpectrumResult out;
  for (const AxisPoint& p : candidate_points(pair, cfg)) {
    switch (transversality(pair, p, cfg).verdict) {
      case Verdict::Transversal: break;
      case Verdict::NotTransversal: out.taylor.push_back(p); break;
      case Verdict::Undecided: out.undecided.push_back(p); break;
    }
  }
  return out;
}

GridScanReport grid_scan(const QPair& pair, std::size_t n, const ToleranceConfig& cfg, double radius) {
  if (n < 2) throw Error(ErrorCode::InvalidInput, "grid needs at least 2 points per direction");
  const std::vector<AxisPoint> cands = candidate_points(pair, cfg);
  GridScanReport report;
  if (radius <= 0.0) {
    double max_abs = 0.0;
    for (const AxisPoint& c : cands) max_abs = std::max({max_abs, std::abs(c.l1), std::abs(c.l2)});
    radius = 1.25 * max_abs + 0.5;
  }
  report.radius = radius;
  const double step = 2.0 * radius / double(n - 1);
  for (int axis = 0; axis < 2; ++axis) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Complex z(-radius + step * double(i), -radius + step * double(j));
        const AxisPoint p = axis == 0 ? AxisPoint{z, 0.0} : AxisPoint{0.0, z};
        const bool is_candidate = std::any_of(cands.begin(), cands.end(), [&](const AxisPoint& c) {
          return points_match(c, p, cfg.point_match_tol);
        });
        if (is_candidate) continue;
        ++report.points_tested;
        switch (transversality(pair, p, cfg).verdict) {
          case Verdict::Transversal: break;
          case Verdict::NotTransversal: report.outside.push_back(p); break;
          case Verdict::Undecided: ++report.ambiguous; break;
        }
      }
    }
  }
  return report;
}

}  // namespace qspec
