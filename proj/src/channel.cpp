#include "risdm/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace risdm {

void PhysicalConstants::validate() const {
  if (!(wavelength > 0.0)) throw std::invalid_argument("constants: wavelength must be > 0");
  if (!(channel_power_gain > 0.0)) throw std::invalid_argument("constants: channel_power_gain must be > 0");
  if (!(noise_bob > 0.0)) throw std::invalid_argument("constants: noise_bob must be > 0");
  if (!(noise_ris > 0.0)) throw std::invalid_argument("constants: noise_ris must be > 0");
  if (!(tx_power > 0.0)) throw std::invalid_argument("constants: tx_power must be > 0");
  if (!(rho_max >= 1.0)) throw std::invalid_argument("constants: rho_max must be >= 1");
}

CVec los_channel(const ArrayLayout& layout, double theta, double phi, double distance,
                 double wavelength, double gain) {
  if (!(distance > 0.0)) throw std::invalid_argument("los_channel: distance must be > 0");
  const double amp = std::sqrt(gain) / distance;
  const double k = 2.0 * kPi / wavelength;
  CVec h(layout.size());
  for (int n = 0; n < layout.size(); ++n) {
    double c = layout.offsets[n].x() * std::cos(theta) * std::cos(phi) +
               layout.offsets[n].y() * std::sin(theta);
    h(n) = std::polar(amp, k * c);
  }
  return h;
}

CVec ris_user_channel(const std::vector<Vec3>& ris_positions, const Vec3& direction,
                      double distance, double wavelength, double gain) {
  if (!(distance > 0.0)) throw std::invalid_argument("ris_user_channel: distance must be > 0");
  if (std::abs(direction.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("ris_user_channel: direction must be a unit vector");
  }
  const double amp = std::sqrt(gain) / distance;
  const double k = 2.0 * kPi / wavelength;
  CVec h(static_cast<Eigen::Index>(ris_positions.size()));
  for (size_t m = 0; m < ris_positions.size(); ++m) {
    h(static_cast<Eigen::Index>(m)) = std::polar(amp, -k * ris_positions[m].dot(direction));
  }
  return h;
}

CMat bs_ris_matrix(const std::vector<Vec3>& bs_positions, const std::vector<Vec3>& ris_positions,
                   double wavelength, double gain) {
  const double k = 2.0 * kPi / wavelength;
  const double sqrt_gain = std::sqrt(gain);
  CMat h(static_cast<Eigen::Index>(bs_positions.size()),
         static_cast<Eigen::Index>(ris_positions.size()));
  for (size_t n = 0; n < bs_positions.size(); ++n) {
    for (size_t m = 0; m < ris_positions.size(); ++m) {
      double d = (bs_positions[n] - ris_positions[m]).norm();
      if (!(d > 0.0)) throw std::invalid_argument("bs_ris_matrix: coincident BS/RIS elements");
      h(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m)) = std::polar(sqrt_gain / d, k * d);
    }
  }
  return h;
}

std::vector<CVec> multipath_channels(RngStream& rng, int count, const CVec& reference_los,
                                     double excess_loss_db) {
  if (count < 0) throw std::invalid_argument("multipath_channels: count must be >= 0");
  const Eigen::Index n = reference_los.size();
  double mean_power = reference_los.squaredNorm() / static_cast<double>(n);
  double sigma = std::sqrt(mean_power * db2lin(-excess_loss_db));
  std::vector<CVec> paths;
  paths.reserve(static_cast<size_t>(count));
  for (int l = 0; l < count; ++l) {
    paths.push_back(sigma * rng.cgaussian_vector(n));
  }
  return paths;
}

void validate_reflection(const CVec& upsilon, double rho_max) {
  for (Eigen::Index m = 0; m < upsilon.size(); ++m) {
    if (!(std::abs(upsilon(m)) <= rho_max + 1e-12)) {
      throw std::invalid_argument("reflection vector violates the amplitude bound (C5)");
    }
  }
}

CMat reflection_matrix(const CVec& upsilon, double rho_max) {
  validate_reflection(upsilon, rho_max);
  return upsilon.asDiagonal();
}

}  // namespace risdm
