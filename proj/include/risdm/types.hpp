#ifndef RISDM_TYPES_HPP
#define RISDM_TYPES_HPP

#include <Eigen/Dense>
#include <complex>

namespace risdm {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;
using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kJ{0.0, 1.0};
inline constexpr double kSpeedOfLight = 299792458.0;

// unconjugated a^T b (receive channels act by transpose)
inline Complex dot_t(const CVec& a, const CVec& b) { return (a.transpose() * b).value(); }

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }
inline double dbm2watt(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
inline double watt2dbm(double w) { return 10.0 * std::log10(w / 1e-3); }
inline double db2lin(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace risdm

#endif
