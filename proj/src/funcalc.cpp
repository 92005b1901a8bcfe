#include "qspec/funcalc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qspec/error.hpp"

namespace qspec {

namespace {

Matrix poly_at(const QSeries& f, std::size_t j, const Matrix& t) {
  const Eigen::Index n = t.rows();
  Matrix acc = Matrix::Zero(n, n);
  for (std::size_t i = f.x_order(); i-- > 0;) {
    acc = acc * t;
    acc.diagonal().array() += f.coeff(i, j);
  }
  return acc;
}

void require_same_q(const QSeries& f, const QPair& pair) {
  if (!points_match(f.q(), pair.q().value(), 1e-14)) {
    throw Error(ErrorCode::QMismatch, "series and pair use different q");
  }
}

}  // namespace

CalculusResult evaluate(const QSeries& f, const QPair& pair, const ToleranceConfig& cfg) {
  require_same_q(f, pair);
  const Matrix& t = pair.T();
  const Matrix& s = pair.S();
  const Eigen::Index n = t.rows();

  Matrix s_pow = Matrix::Identity(n, n);
  for (std::size_t j = 0; j < f.y_order(); ++j) s_pow = s_pow * s;
  CalculusResult out;
  out.nilpotency_residual = max_norm(s_pow);
  const double bound = cfg.rank_tol * std::pow(std::max(1.0, s.norm()), double(f.y_order()));
  if (out.nilpotency_residual > bound) {
    std::ostringstream msg;
    msg << "||S^" << f.y_order() << "||_max = " << out.nilpotency_residual << " exceeds " << bound;
    throw Error(ErrorCode::NotNilpotent, msg.str());
  }

  Matrix acc = Matrix::Zero(n, n);
  for (std::size_t j = f.y_order(); j-- > 0;) acc = acc * s + poly_at(f, j, t);
  out.value = std::move(acc);
  return out;
}

HomomorphismReport homomorphism_check(const QSeries& f, const QSeries& g, const QPair& pair,
                                      const ToleranceConfig& cfg) {
  detail::require_compatible(f, g);
  const std::size_t wide = 2 * f.x_order() - 1;
  const QSeries fw = f.resized(wide, f.y_order());
  const QSeries gw = g.resized(wide, g.y_order());
  const Matrix lhs = evaluate(q_mul(fw, gw), pair, cfg).value;
  const Matrix ef = evaluate(f, pair, cfg).value;
  const Matrix eg = evaluate(g, pair, cfg).value;
  HomomorphismReport r;
  r.residual = max_norm(lhs - ef * eg);
  r.scale = 1.0 + ef.norm() * eg.norm();
  return r;
}

Admissibility calculus_admissible(const QPair& pair, const OpenSet& u, Geometry geometry,
                                  const ToleranceConfig& cfg) {
  const PutinarResult sp = putinar_spectrum(pair, geometry, cfg);
  const QClosedSet& set = sp.set;
  Admissibility out;
  auto fail = [&](const AxisPoint& p, std::string why) {
    out.admissible = false;
    out.witness = p;
    out.diagnostic = std::move(why);
    return out;
  };

  for (const AxisPoint& g : set.generators()) {
    const Axis ax = axis_of(g, cfg.point_match_tol);
    if (ax == Axis::Origin) {
      switch (geometry) {
        case Geometry::Local:
          if (u.x.empty() && u.y.empty()) return fail(g, "U is empty");
          break;
        case Geometry::OY:
          if (!covers_axis(u.x)) return fail(g, "closure of the origin is all of C_x");
          break;
        case Geometry::XO:
          if (!covers_axis(u.y)) return fail(g, "closure of the origin is all of C_y");
          break;
        case Geometry::FormalQ:
          if (!covers_axis(u.x) || !covers_axis(u.y)) return fail(g, "closure of the origin is all of C_xy");
          break;
        case Geometry::Oq:
          if (!covers_axis(u.x) || !u.y.whole) return fail(g, "closure of the origin is all of C_xy");
          break;
      }
      continue;
    }
    if (ax == Axis::Y && set.y_topology() == Topology::Disk) {
      if (!u.y.whole) return fail(g, "disk-topology closure on C_y is unbounded");
      continue;
    }
    if (!open_member(ax == Axis::X ? u.x : u.y, g, pair.q(), cfg)) {
      return fail(g, "generator is not in U");
    }
  }
  return out;
}

}  // namespace qspec
