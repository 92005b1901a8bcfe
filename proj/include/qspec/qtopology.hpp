#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qspec/koszul.hpp"
#include "qspec/qpair.hpp"

namespace qspec {

enum class Topology { Q, Disk };

enum class Geometry { FormalQ, OY, XO, Local, Oq };

/// Parses fq, oy, xo, local, oq; throws InvalidInput otherwise.
Geometry parse_geometry(const std::string& name);
std::string to_string(Geometry g);

struct Disk {
  Complex c{0.0, 0.0};
  double r = 0.0;
};

/// Open subset of one axis: whole, or the union of the forward-saturated disks
/// sat(c, r) = {0} u (union over k >= 0 of q^k D(c, r)).
struct QOpenSet {
  Axis axis = Axis::X;
  bool whole = false;
  std::vector<Disk> disks;

  bool empty() const { return !whole && disks.empty(); }
};

/// U = U_x u U_y.
struct OpenSet {
  QOpenSet x{Axis::X, false, {}};
  QOpenSet y{Axis::Y, false, {}};
};

/// Membership in a single axis part. Points on the other axis are outside,
/// the origin is inside every nonempty part.
bool open_member(const QOpenSet& u, const AxisPoint& z, QParameter q, const ToleranceConfig& cfg = {});
bool open_member(const OpenSet& u, const AxisPoint& z, QParameter q, const ToleranceConfig& cfg = {});

/// The part contains its whole axis: the whole flag, or a disk around the origin.
bool covers_axis(const QOpenSet& u);

/// w lies in the q-closure of the generators: some generator equals q^k w with
/// k >= 0, or some generator is the origin. Throws NonContractiveQ if |q| = 1.
bool q_closure_member(const std::vector<AxisPoint>& generators, const AxisPoint& w, QParameter q,
                      const ToleranceConfig& cfg = {});

/// w lies in the disk-topology closure: some generator z on the axis of w has |z| <= |w| + tol.
bool disk_closure_member(const std::vector<AxisPoint>& generators, const AxisPoint& w,
                         const ToleranceConfig& cfg = {});

/// Closed subset of the spectrum space of a geometry, given by generators and
/// the topology of each axis. Membership is evaluated on demand.
class QClosedSet {
 public:
  QClosedSet(std::vector<AxisPoint> generators, Geometry geometry, QParameter q, ToleranceConfig cfg);

  const std::vector<AxisPoint>& generators() const { return generators_; }
  Geometry geometry() const { return geometry_; }
  Topology x_topology() const { return Topology::Q; }
  Topology y_topology() const { return geometry_ == Geometry::Oq ? Topology::Disk : Topology::Q; }
  QParameter q() const { return q_; }

  /// Points outside the geometry's spectrum space are never members.
  bool contains(const AxisPoint& w) const;

 private:
  std::vector<AxisPoint> generators_;
  Geometry geometry_;
  QParameter q_;
  ToleranceConfig cfg_;
};

/// The spectrum space contains w: C_xy for FormalQ and Oq, C_x for OY, C_y for XO, the origin for Local.
bool in_spectrum_space(Geometry g, const AxisPoint& w, const ToleranceConfig& cfg = {});

struct PutinarResult {
  QClosedSet set;
  std::vector<AxisPoint> undecided;
  std::string diagnostic;
};

/// Closure of the Taylor spectrum in the geometry's topology. OY needs S
/// nilpotent and XO needs T nilpotent (GeometryPreconditionFailed otherwise).
/// Local gives the origin when both are nilpotent and the empty set otherwise.
PutinarResult putinar_spectrum(const QPair& pair, Geometry geometry, const ToleranceConfig& cfg);

}  // namespace qspec
