#ifndef RISDM_GEOMETRY_HPP
#define RISDM_GEOMETRY_HPP

#include <utility>
#include <vector>

#include "risdm/types.hpp"

namespace risdm {

// Rotation of a planar array, elevation alpha in [-pi/2, pi/2] and azimuth
// beta in [0, 2pi], both radians.
struct Orientation {
  double alpha = 0.0;
  double beta = 0.0;
};

// Rotated orthonormal frame: outward normal plus the in-plane horizontal and
// vertical axes.
struct Basis {
  Vec3 normal;
  Vec3 h;
  Vec3 v;
};

// Planar array grid: n_h x n_v elements, inter-element spacing in meters,
// per-element (horizontal, vertical) offsets in the array plane. Offsets are
// kept in element order m = 1..n_h*n_v (column within a vertical stripe runs
// fastest). The vertical offsets run 0.5*spacing..(n_v-0.5)*spacing shifted
// by -(n_v-1)/2, i.e. the grid is vertically off-center by construction; all
// channel phases share the convention, so only a common phase is affected.
struct ArrayLayout {
  int n_h = 1;
  int n_v = 1;
  double spacing = 0.0;
  std::vector<Vec2> offsets;  // (r_h, r_v) pairs

  int size() const { return n_h * n_v; }
};

// Rotated unit frame for a given orientation.
Basis rotated_basis(const Orientation& o);

// Direction unit vector k(theta, phi) and its angle derivatives.
Vec3 unit_direction(double theta, double phi);
Vec3 dtheta_direction(double theta, double phi);
Vec3 dphi_direction(double theta, double phi);

// (theta, phi) of a unit direction: theta = asin(z), phi = atan2(y, x).
std::pair<double, double> direction_angles(const Vec3& u);

// Grid offsets for an n_h x n_v array with the given spacing.
ArrayLayout element_offsets(int n_h, int n_v, double spacing);

// Global element positions r_h * h + r_v * v + center.
std::vector<Vec3> place_elements(const ArrayLayout& layout, const Orientation& o,
                                 const Vec3& center);

}  // namespace risdm

#endif
