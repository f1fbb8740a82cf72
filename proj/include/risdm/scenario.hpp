#ifndef RISDM_SCENARIO_HPP
#define RISDM_SCENARIO_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "risdm/channel.hpp"
#include "risdm/geometry.hpp"
#include "risdm/rng.hpp"

namespace risdm {

// Raw configuration tree. Values are kept in the units of the config file
// (degrees, dBm, GHz); unit conversions happen once in build_scenario so a
// save/load round trip is exact.

struct RotationBoxConfig {
  double alpha_min_deg = -80.0;
  double alpha_max_deg = 0.0;
  double beta_min_deg = 90.0;
  double beta_max_deg = 150.0;
};

struct GeometryConfig {
  Vec3 bs_position_m{-20.0, 0.0, 0.0};
  Vec3 bob_position_m{-1.8017029032901566, 4.95013804335554, -8.5};  // see paper_defaults()
  std::vector<Vec3> eve_waypoints_m;  // piecewise-linear trajectory, sampled at num_slots
  int num_slots = 20;
  RotationBoxConfig rotation_box;
  // BS array orientation; left NaN they derive from the BS position as seen
  // from the RIS center.
  double bs_elevation_deg = std::numeric_limits<double>::quiet_NaN();
  double bs_azimuth_deg = std::numeric_limits<double>::quiet_NaN();
};

struct ArraysConfig {
  int bs_h = 4;
  int bs_v = 4;
  int ris_h = 8;
  int ris_v = 8;
  double bs_spacing_m = 0.0;   // 0 -> half wavelength
  double ris_spacing_m = 0.0;  // 0 -> half wavelength
};

struct ConstantsConfig {
  double carrier_ghz = 2.4;
  double tx_power_dbm = 40.0;
  double rho_max = 10.0;
  double noise_bob_dbm = -80.0;    // Bob and Eve
  double noise_ris_dbm = -90.0;
  double noise_sense_dbm = -80.0;  // BS receive noise during positioning
  double channel_power_gain = 0.0;  // 0 -> (lambda / 4 pi)^2
  int multipath_count = 2;
  double multipath_excess_loss_db = 10.0;
};

struct MusicConfig {
  double theta_min_deg = -90.0;
  double theta_max_deg = 90.0;
  double phi_min_deg = 0.0;
  double phi_max_deg = 180.0;
  double step_deg = 0.5;
  int snapshots = 64;
};

struct SensingConfig {
  int num_modes = 4;  // P
  double crlb_threshold_rad2 = 1e-3;
  MusicConfig music;
};

struct RlConfig {
  double actor_lr = 3e-4;
  double critic_lr = 3e-4;
  double temperature_lr = 3e-4;
  double discount = 0.99;
  double soft_update = 0.005;
  double sync_rate = 0.005;
  double init_temperature = 0.01;
  bool adapt_temperature = true;
  double target_entropy = -2.0;
  int hidden = 256;
  int batch = 64;
  int buffer_capacity = 100000;
  int warmup = 500;
  double clip_constant = 3.0;  // scales E[sigma] into the clip bound
  double value_range_lo = 0.0;
  double value_range_hi = 30.0;
  double bound_range_lo = 0.5;
  double bound_range_hi = 2.0;
  double penalty = 0.0;  // Gamma subtracted from the secrecy rate
  int episodes = 200;
  std::string algorithm = "el";  // solver inside the environment: el | mnpl
};

struct ScenarioConfig {
  uint64_t seed = 1;
  GeometryConfig geometry;
  ArraysConfig arrays;
  ConstantsConfig constants;
  SensingConfig sensing;
  RlConfig rl;

  // Full-size defaults of the reference experiment (N=16, M=64, 2.4 GHz,
  // 40 dBm, rho_max 10, 20/5/10 m distances, -90/-80/-80 dBm noise).
  static ScenarioConfig paper_defaults();
  // Small arrays (N=8, M=16) for fast runs and CI.
  static ScenarioConfig desk();

  void validate() const;  // throws naming the offending field
};

// Runtime scenario in SI units.
struct Scenario {
  ScenarioConfig cfg;
  PhysicalConstants consts;
  double noise_sense = 0.0;  // W
  Complex pilot_eve{0.0, 0.0};
  Complex pilot_bob{0.0, 0.0};
  ArrayLayout bs_layout;
  ArrayLayout ris_layout;
  Orientation bs_orientation;
  Vec3 bs_center;
  Vec3 bob_position;
  std::vector<Vec3> eve_positions;  // one per slot
  Orientation box_min;
  Orientation box_max;

  int num_slots() const { return static_cast<int>(eve_positions.size()); }
};

Scenario build_scenario(const ScenarioConfig& cfg);

// All channels for one slot under the given RIS orientation. Multipath draws
// come from substreams keyed on the slot only, so the same (scenario, slot)
// sees the same multipath under every orientation.
ChannelSet make_channels(const Scenario& sc, int slot, const Orientation& ris_orientation,
                         const SeededRng& rng);

// Eve direction from the RIS center, global (theta, phi) and distance.
std::pair<double, double> eve_angles(const Scenario& sc, int slot);

Orientation clamp_to_box(const Scenario& sc, double alpha, double beta);

// Orientation pointing the RIS normal at Eve, clamped into the rotation box.
Orientation eve_aligned_orientation(const Scenario& sc, int slot);

}  // namespace risdm

#endif
