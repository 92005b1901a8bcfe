#include "qspec/plot.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace qspec {

namespace {

constexpr double kPanel = 400.0;
constexpr double kRadius = 180.0;

struct Scale {
  double lo = -3.0;
  double hi = 1.0;

  double radius(double modulus) const {
    if (modulus <= 0.0) return 0.0;
    const double t = (std::log10(modulus) - lo) / (hi - lo);
    return kRadius * std::clamp(t, 0.0, 1.0);
  }
};

void point_xy(std::ostringstream& out, const Scale& s, double cx, Complex z) {
  const double r = s.radius(std::abs(z));
  const double a = std::arg(z);
  out << cx + r * std::cos(a) << "," << kPanel / 2 - r * std::sin(a);
}

}  // namespace

std::string spectrum_svg(const std::vector<AxisPoint>& points, QParameter q, int orbit_steps) {
  const double tol = 1e-12;
  double min_abs = std::numeric_limits<double>::infinity();
  double max_abs = 0.0;
  for (const AxisPoint& p : points) {
    for (Complex z : {p.l1, p.l2}) {
      const double m = std::abs(z);
      if (m <= tol) continue;
      min_abs = std::min(min_abs, m);
      max_abs = std::max(max_abs, m);
    }
  }
  Scale scale;
  const double log_q = std::log10(std::abs(q.value()));
  if (max_abs > 0.0) {
    // leave room for a few orbit steps on both sides when |q| < 1
    const double span = log_q < 0.0 ? -log_q * 3.0 : 1.0;
    scale.lo = std::log10(min_abs) - span;
    scale.hi = std::log10(max_abs) + span;
  }

  std::ostringstream out;
  out << std::setprecision(6);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * kPanel << "\" height=\"" << kPanel + 30
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (int panel = 0; panel < 2; ++panel) {
    const double cx = kPanel * panel + kPanel / 2;
    out << "<g>\n";
    out << "<circle cx=\"" << cx << "\" cy=\"" << kPanel / 2 << "\" r=\"" << kRadius
        << "\" fill=\"none\" stroke=\"#ccc\"/>\n";
    for (int decade = int(std::ceil(scale.lo)); decade <= int(std::floor(scale.hi)); ++decade) {
      const double r = scale.radius(std::pow(10.0, decade));
      out << "<circle cx=\"" << cx << "\" cy=\"" << kPanel / 2 << "\" r=\"" << r
          << "\" fill=\"none\" stroke=\"#eee\"/>\n";
    }
    out << "<text x=\"" << cx - 20 << "\" y=\"" << kPanel + 20 << "\">" << (panel == 0 ? "C_x" : "C_y")
        << "</text>\n";
    for (const AxisPoint& p : points) {
      const Complex z = panel == 0 ? p.l1 : p.l2;
      const Complex other = panel == 0 ? p.l2 : p.l1;
      if (std::abs(z) <= tol) {
        if (std::abs(other) <= tol) {
          out << "<circle cx=\"" << cx << "\" cy=\"" << kPanel / 2 << "\" r=\"5\" fill=\"#c00\"/>\n";
        }
        continue;
      }
      for (int dir : {-1, 1}) {
        out << "<polyline fill=\"none\" stroke=\"#36c\"" << (dir > 0 ? " stroke-dasharray=\"4,3\"" : "")
            << " points=\"";
        Complex w = z;
        for (int k = 0; k <= orbit_steps; ++k) {
          point_xy(out, scale, cx, w);
          out << " ";
          w = dir < 0 ? w / q.value() : w * q.value();
        }
        out << "\"/>\n";
      }
      out << "<circle cx=\"";
      const double r = scale.radius(std::abs(z));
      out << cx + r * std::cos(std::arg(z)) << "\" cy=\"" << kPanel / 2 - r * std::sin(std::arg(z))
          << "\" r=\"4\" fill=\"#c00\"/>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace qspec
