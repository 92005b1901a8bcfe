#include "qspec/qtopology.hpp"

#include <algorithm>
#include <cmath>

#include "qspec/error.hpp"

namespace qspec {

namespace {

Complex coordinate(const AxisPoint& p, Axis axis) { return axis == Axis::Y ? p.l2 : p.l1; }

bool orbit_meets_disk(Complex w, const Disk& d, Complex q) {
  if (!(d.r > 0.0)) return false;
  if (std::abs(d.c) < d.r) return true;
  const double floor_abs = std::abs(d.c) - d.r;
  while (w != Complex(0.0, 0.0) && std::abs(w) >= floor_abs) {
    if (std::abs(w - d.c) < d.r) return true;
    w *= q;
  }
  return false;
}

}  // namespace

Geometry parse_geometry(const std::string& name) {
  if (name == "fq") return Geometry::FormalQ;
  if (name == "oy") return Geometry::OY;
  if (name == "xo") return Geometry::XO;
  if (name == "local") return Geometry::Local;
  if (name == "oq") return Geometry::Oq;
  throw Error(ErrorCode::InvalidInput, "unknown geometry '" + name + "'");
}

std::string to_string(Geometry g) {
  switch (g) {
    case Geometry::FormalQ: return "fq";
    case Geometry::OY: return "oy";
    case Geometry::XO: return "xo";
    case Geometry::Local: return "local";
    case Geometry::Oq: return "oq";
  }
  return "unknown";
}

bool open_member(const QOpenSet& u, const AxisPoint& z, QParameter q, const ToleranceConfig& cfg) {
  if (u.empty()) return false;
  const Axis ax = axis_of(z, cfg.point_match_tol);
  if (ax == Axis::Origin) return true;
  if (ax != u.axis) return false;
  if (u.whole) return true;
  q.require_contractive();
  const Complex w = coordinate(z, ax);
  return std::any_of(u.disks.begin(), u.disks.end(),
                     [&](const Disk& d) { return orbit_meets_disk(w, d, q.value()); });
}

bool open_member(const OpenSet& u, const AxisPoint& z, QParameter q, const ToleranceConfig& cfg) {
  return open_member(u.x, z, q, cfg) || open_member(u.y, z, q, cfg);
}

bool covers_axis(const QOpenSet& u) {
  return u.whole || std::any_of(u.disks.begin(), u.disks.end(),
                                [](const Disk& d) { return std::abs(d.c) < d.r; });
}

bool q_closure_member(const std::vector<AxisPoint>& generators, const AxisPoint& w, QParameter q,
                      const ToleranceConfig& cfg) {
  q.require_contractive();
  const double tol = cfg.point_match_tol;
  const Axis wax = axis_of(w, tol);
  const double log_q = std::log(std::abs(q.value()));
  for (const AxisPoint& g : generators) {
    const Axis gax = axis_of(g, tol);
    if (gax == Axis::Origin) return true;
    if (gax != wax) continue;
    const Complex a = coordinate(g, gax);
    const Complex b = coordinate(w, wax);
    const double k_real = std::log(std::abs(a) / std::abs(b)) / log_q;
    if (k_real < -1.0) continue;
    const long lo = std::max(0L, static_cast<long>(std::floor(k_real)) - 1);
    const long hi = static_cast<long>(std::ceil(k_real)) + 1;
    for (long k = lo; k <= hi; ++k) {
      if (points_match(std::pow(q.value(), static_cast<int>(k)) * b, a, tol)) return true;
    }
  }
  return false;
}

bool disk_closure_member(const std::vector<AxisPoint>& generators, const AxisPoint& w,
                         const ToleranceConfig& cfg) {
  const double tol = cfg.point_match_tol;
  const Axis wax = axis_of(w, tol);
  for (const AxisPoint& g : generators) {
    const Axis gax = axis_of(g, tol);
    if (gax == Axis::Origin) return true;
    if (gax != wax) continue;
    if (std::abs(coordinate(g, gax)) <= std::abs(coordinate(w, wax)) + tol) return true;
  }
  return false;
}

bool in_spectrum_space(Geometry g, const AxisPoint& w, const ToleranceConfig& cfg) {
  const Axis ax = axis_of(w, cfg.point_match_tol);
  switch (g) {
    case Geometry::FormalQ:
    case Geometry::Oq: return true;
    case Geometry::OY: return ax != Axis::Y;
    case Geometry::XO: return ax != Axis::X;
    case Geometry::Local: return ax == Axis::Origin;
  }
  return false;
}

QClosedSet::QClosedSet(std::vector<AxisPoint> generators, Geometry geometry, QParameter q, ToleranceConfig cfg)
    : generators_(std::move(generators)), geometry_(geometry), q_(q), cfg_(cfg) {
  if (geometry_ != Geometry::Local) q_.require_contractive();
  std::sort(generators_.begin(), generators_.end(), point_less);
}

bool QClosedSet::contains(const AxisPoint& w) const {
  if (!in_spectrum_space(geometry_, w, cfg_)) return false;
  const Axis ax = axis_of(w, cfg_.point_match_tol);
  if (ax == Axis::Origin) {
    return std::any_of(generators_.begin(), generators_.end(), [&](const AxisPoint& g) {
      return axis_of(g, cfg_.point_match_tol) == Axis::Origin;
    });
  }
  if (ax == Axis::Y && y_topology() == Topology::Disk) return disk_closure_member(generators_, w, cfg_);
  return q_closure_member(generators_, w, q_, cfg_);
}

PutinarResult putinar_spectrum(const QPair& pair, Geometry geometry, const ToleranceConfig& cfg) {
  cfg.validate();
  if (geometry == Geometry::Local) {
    if (is_nilpotent(pair.T(), cfg) && is_nilpotent(pair.S(), cfg)) {
      return {QClosedSet({AxisPoint{}}, geometry, pair.q(), cfg), {}, ""};
    }
    return {QClosedSet({}, geometry, pair.q(), cfg), {},
            "T or S is not nilpotent; the module does not extend to the formal power series algebra"};
  }
  if (geometry == Geometry::OY && !is_nilpotent(pair.S(), cfg)) {
    throw Error(ErrorCode::GeometryPreconditionFailed, "geometry oy needs S nilpotent");
  }
  if (geometry == Geometry::XO && !is_nilpotent(pair.T(), cfg)) {
    throw Error(ErrorCode::GeometryPreconditionFailed, "geometry xo needs T nilpotent");
  }
  pair.q().require_contractive();
  const SpectrumResult taylor = taylor_spectrum(pair, cfg);
  std::vector<AxisPoint> gens;
  for (const AxisPoint& p : taylor.taylor)
    if (in_spectrum_space(geometry, p, cfg)) gens.push_back(p);
  return {QClosedSet(std::move(gens), geometry, pair.q(), cfg), taylor.undecided, ""};
}

}  // namespace qspec
