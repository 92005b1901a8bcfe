#pragma once

#include <string>
#include <vector>

#include "qspec/koszul.hpp"
#include "qspec/qpair.hpp"

namespace qspec {

/// Two panels (C_x, C_y) in log-modulus polar coordinates: a point z sits at
/// angle arg z and radius proportional to log|z| above a floor. Each nonzero
/// spectrum point gets its q-orbit as a polyline, the backward part solid and
/// the forward part dashed. The origin is drawn at the center of both panels.
std::string spectrum_svg(const std::vector<AxisPoint>& points, QParameter q, int orbit_steps = 12);

}  // namespace qspec
