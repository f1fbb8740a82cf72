#ifndef RISDM_SENSING_HPP
#define RISDM_SENSING_HPP

#include <vector>

#include "risdm/channel.hpp"
#include "risdm/linalg.hpp"
#include "risdm/rng.hpp"

namespace risdm {

// Positioning-mode measurement plan: P unit-modulus RIS modes plus the pilot
// scalars of the Eve-path and Bob-path signals and the BS receive noise.
struct MeasurementPlan {
  std::vector<CVec> modes;  // P vectors of size M, |entry| = 1
  Complex pilot_eve{0.0, 0.0};  // s1
  Complex pilot_bob{0.0, 0.0};  // s2
  double noise_power = 0.0;     // sigma_hat^2, W

  int num_modes() const { return static_cast<int>(modes.size()); }
};

struct CrlbReport {
  Eigen::Matrix2d fim = Eigen::Matrix2d::Zero();
  double det_f = 0.0;
  double crlb_theta = std::numeric_limits<double>::infinity();  // [F^-1]_11, rad^2
  double crlb_phi = std::numeric_limits<double>::infinity();    // [F^-1]_22, rad^2
  bool identifiable = false;
};

struct AngleEstimate {
  double theta = 0.0;
  double phi = 0.0;
  double spectrum_peak = 0.0;
};

struct MusicGrid {
  double theta_min = 0.0;
  double theta_max = 0.0;
  double phi_min = 0.0;
  double phi_max = 0.0;
  double step = 0.0;  // radians
};

// RIS modes that suppress the Bob-path return at the BS: rank-one surrogate of
// the relaxed leakage minimizer (minimum eigenvector of
// Q = diag(h_rb)^H H^H H diag(h_rb)) followed by Gaussian-randomized phase
// extraction. Each returned mode leaks at most as much as the all-ones
// reflection.
MeasurementPlan design_positioning_phases(const ChannelSet& ch, int num_modes, Complex pilot_eve,
                                          Complex pilot_bob, double noise_power, RngStream& rng);

// Stacked mode matrix G, (N P) x M, block p = H diag(mode_p).
CMat measurement_stack_matrix(const MeasurementPlan& plan, const ChannelSet& ch);

// One stacked measurement and its noise-free mean.
struct StackedMeasurement {
  CVec x;   // with noise
  CVec mu;  // noise-free
};
StackedMeasurement stack_measurements(const MeasurementPlan& plan, const ChannelSet& ch,
                                      RngStream& rng);

// K stacked snapshots with per-snapshot random phases on the two pilots
// (incoherent sources at the pilot power levels).
CMat draw_snapshots(const MeasurementPlan& plan, const ChannelSet& ch, int num_snapshots,
                    RngStream& rng);

// MUSIC grid search over the stacked steering manifold
// a(theta, phi) = G * e(theta, phi); returns the best grid point.
AngleEstimate music_estimate(const CMat& snapshots, const MeasurementPlan& plan,
                             const ChannelSet& ch, const std::vector<Vec3>& ris_positions,
                             double wavelength, const MusicGrid& grid);

// Analytic Fisher information of (theta, phi) for the stacked measurement,
// and the CRLBs from its inverse. Singular information is flagged instead of
// silently returning infinities.
CrlbReport fisher_information(double theta, double phi, const MeasurementPlan& plan,
                              const ChannelSet& ch, const std::vector<Vec3>& ris_positions,
                              double wavelength);

bool crlb_feasible(const CrlbReport& report, double eps_rad2);

// Unit-modulus RIS phase response toward (theta, phi).
CVec ris_steering(const std::vector<Vec3>& ris_positions, double theta, double phi,
                  double wavelength);

}  // namespace risdm

#endif
