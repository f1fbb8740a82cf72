#ifndef RISDM_CHANNEL_HPP
#define RISDM_CHANNEL_HPP

#include <vector>

#include "risdm/geometry.hpp"
#include "risdm/rng.hpp"
#include "risdm/types.hpp"

namespace risdm {

// Physical constants of one scenario, SI units throughout.
struct PhysicalConstants {
  double wavelength = 0.0;          // m
  double channel_power_gain = 0.0;  // varsigma, dimensionless
  double noise_bob = 0.0;           // sigma_t^2, W (Bob and Eve)
  double noise_ris = 0.0;           // sigma_I^2, W
  double tx_power = 0.0;            // P_t, W
  double rho_max = 1.0;             // max reflection amplitude

  void validate() const;  // throws on non-physical values
};

// All channels of one time slot. N = BS antennas, M = RIS elements,
// L = multipath count per user.
struct ChannelSet {
  CVec h_ab;       // BS -> Bob, N
  CVec h_ae;       // BS -> Eve, N
  CVec h_rb;       // RIS -> Bob, M
  CVec h_re;       // RIS -> Eve, M
  CMat h_bs_ris;   // BS <-> RIS per-element-pair matrix, N x M
  std::vector<CVec> multipath_bob;  // L vectors of size N
  std::vector<CVec> multipath_eve;  // L vectors of size N

  Eigen::Index n() const { return h_ab.size(); }
  Eigen::Index m() const { return h_rb.size(); }
};

// Far-field channel seen from a planar array toward (theta, phi) at a common
// distance; entry n is sqrt(gain)/distance * exp(+j 2pi/lambda * c_n) with
// c_n = r_h cos(theta) cos(phi) + r_v sin(theta).
CVec los_channel(const ArrayLayout& layout, double theta, double phi, double distance,
                 double wavelength, double gain);

// RIS -> user channel; entry m is sqrt(gain)/distance * exp(-j 2pi/lambda * i_m . dir)
// for global element positions i_m and a unit direction toward the user.
CVec ris_user_channel(const std::vector<Vec3>& ris_positions, const Vec3& direction,
                      double distance, double wavelength, double gain);

// BS <-> RIS matrix with exact per-pair distances in amplitude and phase.
CMat bs_ris_matrix(const std::vector<Vec3>& bs_positions, const std::vector<Vec3>& ris_positions,
                   double wavelength, double gain);

// L i.i.d. circularly-symmetric Gaussian channels whose mean per-entry power
// sits excess_loss_db below the mean per-entry power of reference_los.
std::vector<CVec> multipath_channels(RngStream& rng, int count, const CVec& reference_los,
                                     double excess_loss_db);

// diag(upsilon); rejects entries above rho_max (constraint C5).
CMat reflection_matrix(const CVec& upsilon, double rho_max);

void validate_reflection(const CVec& upsilon, double rho_max);

}  // namespace risdm

#endif
