#include "risdm/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace risdm {

Basis rotated_basis(const Orientation& o) {
  double ca = std::cos(o.alpha), sa = std::sin(o.alpha);
  double cb = std::cos(o.beta), sb = std::sin(o.beta);
  Basis b;
  b.normal = Vec3(ca * cb, ca * sb, sa);
  b.h = Vec3(-sb, cb, 0.0);
  b.v = Vec3(-sa * cb, -sa * sb, ca);
  return b;
}

Vec3 unit_direction(double theta, double phi) {
  return Vec3(std::cos(theta) * std::cos(phi), std::cos(theta) * std::sin(phi), std::sin(theta));
}

Vec3 dtheta_direction(double theta, double phi) {
  return Vec3(-std::sin(theta) * std::cos(phi), -std::sin(theta) * std::sin(phi), std::cos(theta));
}

Vec3 dphi_direction(double theta, double phi) {
  return Vec3(-std::cos(theta) * std::sin(phi), std::cos(theta) * std::cos(phi), 0.0);
}

std::pair<double, double> direction_angles(const Vec3& u) {
  double z = std::clamp(u.z(), -1.0, 1.0);
  return {std::asin(z), std::atan2(u.y(), u.x())};
}

ArrayLayout element_offsets(int n_h, int n_v, double spacing) {
  if (n_h < 1 || n_v < 1) throw std::invalid_argument("element_offsets: counts must be >= 1");
  if (!(spacing > 0.0)) throw std::invalid_argument("element_offsets: spacing must be > 0");
  ArrayLayout layout;
  layout.n_h = n_h;
  layout.n_v = n_v;
  layout.spacing = spacing;
  layout.offsets.reserve(static_cast<size_t>(n_h) * n_v);
  for (int m = 1; m <= n_h * n_v; ++m) {
    int stripe = (m - 1) / n_v;
    double r_h = (stripe - 0.5 * (n_h - 1)) * spacing;
    double r_v = (m - stripe * n_v - 0.5 * (n_v - 1)) * spacing;
    layout.offsets.emplace_back(r_h, r_v);
  }
  return layout;
}

std::vector<Vec3> place_elements(const ArrayLayout& layout, const Orientation& o,
                                 const Vec3& center) {
  Basis b = rotated_basis(o);
  std::vector<Vec3> positions;
  positions.reserve(layout.offsets.size());
  for (const Vec2& off : layout.offsets) {
    positions.push_back(off.x() * b.h + off.y() * b.v + center);
  }
  return positions;
}

}  // namespace risdm
