#include "risdm/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace risdm {

namespace {

std::vector<Vec3> default_eve_waypoints() {
  // Level flight past the RIS at its own height; endpoints 5 m away.
  double y = std::sqrt(25.0 - 2.25);
  return {Vec3(-1.5, y, 0.0), Vec3(1.5, y, 0.0)};
}

Vec3 default_bob_position() {
  // Terminal at 1.5 m above ground with the RIS 10 m up, 10 m range, bearing
  // 110 degrees; keeps Bob inside the rotation window and off the array's
  // vertical endfire null.
  double drop = 8.5;
  double reach = std::sqrt(100.0 - drop * drop);
  double az = deg2rad(110.0);
  return Vec3(reach * std::cos(az), reach * std::sin(az), -drop);
}

// Arc-length uniform sampling of a piecewise-linear trajectory.
std::vector<Vec3> sample_trajectory(const std::vector<Vec3>& waypoints, int num_slots) {
  if (waypoints.empty()) throw std::invalid_argument("geometry.eve_waypoints: empty");
  if (num_slots < 1) throw std::invalid_argument("geometry.num_slots: must be >= 1");
  std::vector<Vec3> out;
  out.reserve(static_cast<size_t>(num_slots));
  if (waypoints.size() == 1 || num_slots == 1) {
    for (int t = 0; t < num_slots; ++t) out.push_back(waypoints.front());
    return out;
  }
  std::vector<double> cum{0.0};
  for (size_t i = 1; i < waypoints.size(); ++i) {
    cum.push_back(cum.back() + (waypoints[i] - waypoints[i - 1]).norm());
  }
  double total = cum.back();
  for (int t = 0; t < num_slots; ++t) {
    double s = total * static_cast<double>(t) / static_cast<double>(num_slots - 1);
    size_t seg = 1;
    while (seg + 1 < cum.size() && cum[seg] < s) ++seg;
    double seg_len = cum[seg] - cum[seg - 1];
    double frac = seg_len > 0.0 ? (s - cum[seg - 1]) / seg_len : 0.0;
    out.push_back(waypoints[seg - 1] + frac * (waypoints[seg] - waypoints[seg - 1]));
  }
  return out;
}

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw std::invalid_argument("config: " + field + " " + what);
}

}  // namespace

ScenarioConfig ScenarioConfig::paper_defaults() {
  ScenarioConfig cfg;
  cfg.geometry.bob_position_m = default_bob_position();
  cfg.geometry.eve_waypoints_m = default_eve_waypoints();
  return cfg;
}

ScenarioConfig ScenarioConfig::desk() {
  ScenarioConfig cfg = paper_defaults();
  cfg.arrays.bs_h = 4;
  cfg.arrays.bs_v = 2;   // N = 8
  cfg.arrays.ris_h = 4;
  cfg.arrays.ris_v = 4;  // M = 16
  return cfg;
}

void ScenarioConfig::validate() const {
  require(geometry.num_slots >= 1, "geometry.num_slots", "must be >= 1");
  require(!geometry.eve_waypoints_m.empty(), "geometry.eve_waypoints_m", "must be nonempty");
  require(geometry.rotation_box.alpha_min_deg <= geometry.rotation_box.alpha_max_deg,
          "geometry.rotation_box", "alpha range must be ordered");
  require(geometry.rotation_box.beta_min_deg <= geometry.rotation_box.beta_max_deg,
          "geometry.rotation_box", "beta range must be ordered");
  require(arrays.bs_h >= 1 && arrays.bs_v >= 1, "arrays.bs", "counts must be >= 1");
  require(arrays.ris_h >= 1 && arrays.ris_v >= 1, "arrays.ris", "counts must be >= 1");
  require(arrays.bs_spacing_m >= 0.0, "arrays.bs_spacing_m", "must be >= 0");
  require(arrays.ris_spacing_m >= 0.0, "arrays.ris_spacing_m", "must be >= 0");
  require(constants.carrier_ghz > 0.0, "constants.carrier_ghz", "must be > 0");
  require(std::isfinite(constants.tx_power_dbm) && dbm2watt(constants.tx_power_dbm) > 0.0,
          "constants.tx_power", "must be a physical power");
  require(constants.rho_max >= 1.0, "constants.rho_max", "must be >= 1");
  require(constants.channel_power_gain >= 0.0, "constants.channel_power_gain", "must be >= 0");
  require(constants.multipath_count >= 0, "constants.multipath_count", "must be >= 0");
  require(sensing.num_modes >= 2, "sensing.num_modes", "must be >= 2");
  require(sensing.crlb_threshold_rad2 > 0.0, "sensing.crlb_threshold_rad2", "must be > 0");
  require(sensing.music.step_deg > 0.0, "sensing.music.step_deg", "must be > 0");
  require(sensing.music.snapshots >= 2, "sensing.music.snapshots", "must be >= 2");
  require(rl.hidden >= 1, "rl.hidden", "must be >= 1");
  require(rl.batch >= 1, "rl.batch", "must be >= 1");
  require(rl.buffer_capacity >= 1, "rl.buffer_capacity", "must be >= 1");
  require(rl.warmup < rl.buffer_capacity, "rl.warmup", "must be below buffer_capacity");
  require(rl.discount >= 0.0 && rl.discount < 1.0, "rl.discount", "must be in [0, 1)");
  require(rl.init_temperature > 0.0, "rl.init_temperature", "must be > 0");
  require(rl.algorithm == "el" || rl.algorithm == "mnpl", "rl.algorithm", "must be el or mnpl");
}

Scenario build_scenario(const ScenarioConfig& cfg_in) {
  ScenarioConfig cfg = cfg_in;
  if (cfg.geometry.eve_waypoints_m.empty()) {
    cfg.geometry.eve_waypoints_m = default_eve_waypoints();
  }
  cfg.validate();

  Scenario sc;
  sc.cfg = cfg;

  double lambda = kSpeedOfLight / (cfg.constants.carrier_ghz * 1e9);
  sc.consts.wavelength = lambda;
  sc.consts.channel_power_gain = cfg.constants.channel_power_gain > 0.0
                                     ? cfg.constants.channel_power_gain
                                     : std::pow(lambda / (4.0 * kPi), 2);
  sc.consts.noise_bob = dbm2watt(cfg.constants.noise_bob_dbm);
  sc.consts.noise_ris = dbm2watt(cfg.constants.noise_ris_dbm);
  sc.consts.tx_power = dbm2watt(cfg.constants.tx_power_dbm);
  sc.consts.rho_max = cfg.constants.rho_max;
  sc.consts.validate();
  sc.noise_sense = dbm2watt(cfg.constants.noise_sense_dbm);

  double pilot = std::sqrt(sc.consts.tx_power / 2.0);
  sc.pilot_eve = Complex(pilot, 0.0);
  sc.pilot_bob = Complex(pilot, 0.0);

  double d_bs = cfg.arrays.bs_spacing_m > 0.0 ? cfg.arrays.bs_spacing_m : lambda / 2.0;
  double d_ris = cfg.arrays.ris_spacing_m > 0.0 ? cfg.arrays.ris_spacing_m : lambda / 2.0;
  sc.bs_layout = element_offsets(cfg.arrays.bs_h, cfg.arrays.bs_v, d_bs);
  sc.ris_layout = element_offsets(cfg.arrays.ris_h, cfg.arrays.ris_v, d_ris);

  sc.bs_center = cfg.geometry.bs_position_m;
  sc.bob_position = cfg.geometry.bob_position_m;
  if (std::isnan(cfg.geometry.bs_elevation_deg) || std::isnan(cfg.geometry.bs_azimuth_deg)) {
    auto [th, ph] = direction_angles(sc.bs_center.normalized());
    sc.bs_orientation = Orientation{th, ph};
  } else {
    sc.bs_orientation = Orientation{deg2rad(cfg.geometry.bs_elevation_deg),
                                    deg2rad(cfg.geometry.bs_azimuth_deg)};
  }

  sc.eve_positions = sample_trajectory(cfg.geometry.eve_waypoints_m, cfg.geometry.num_slots);
  sc.box_min = Orientation{deg2rad(cfg.geometry.rotation_box.alpha_min_deg),
                           deg2rad(cfg.geometry.rotation_box.beta_min_deg)};
  sc.box_max = Orientation{deg2rad(cfg.geometry.rotation_box.alpha_max_deg),
                           deg2rad(cfg.geometry.rotation_box.beta_max_deg)};
  return sc;
}

namespace {

// (theta, phi) of a target in the local frame of an array plus the far-field
// reference distance from the first element.
struct LocalView {
  double theta;
  double phi;
  double distance;
};

LocalView local_view(const std::vector<Vec3>& positions, const Basis& basis, const Vec3& target) {
  Vec3 rel = target - positions.front();
  double distance = rel.norm();
  Vec3 u = rel / distance;
  Vec3 local(basis.normal.dot(u), basis.h.dot(u), basis.v.dot(u));
  double theta = std::asin(std::clamp(local.z(), -1.0, 1.0));
  double phi = std::atan2(local.y(), local.x());
  return {theta, phi, distance};
}

}  // namespace

ChannelSet make_channels(const Scenario& sc, int slot, const Orientation& ris_orientation,
                         const SeededRng& rng) {
  if (slot < 0 || slot >= sc.num_slots()) throw std::out_of_range("make_channels: slot out of range");
  const Vec3 eve = sc.eve_positions[static_cast<size_t>(slot)];
  const double lambda = sc.consts.wavelength;
  const double gain = sc.consts.channel_power_gain;

  std::vector<Vec3> bs_positions = place_elements(sc.bs_layout, sc.bs_orientation, sc.bs_center);
  std::vector<Vec3> ris_positions = place_elements(sc.ris_layout, ris_orientation, Vec3::Zero());
  Basis bs_basis = rotated_basis(sc.bs_orientation);

  ChannelSet ch;
  LocalView bob_view = local_view(bs_positions, bs_basis, sc.bob_position);
  ch.h_ab = los_channel(sc.bs_layout, bob_view.theta, bob_view.phi, bob_view.distance, lambda, gain);
  LocalView eve_view = local_view(bs_positions, bs_basis, eve);
  ch.h_ae = los_channel(sc.bs_layout, eve_view.theta, eve_view.phi, eve_view.distance, lambda, gain);

  double d_rb = (ris_positions.front() - sc.bob_position).norm();
  ch.h_rb = ris_user_channel(ris_positions, sc.bob_position.normalized(), d_rb, lambda, gain);
  double d_re = (ris_positions.front() - eve).norm();
  ch.h_re = ris_user_channel(ris_positions, eve.normalized(), d_re, lambda, gain);

  ch.h_bs_ris = bs_ris_matrix(bs_positions, ris_positions, lambda, gain);

  RngStream mp_bob = rng.stream("multipath-bob", static_cast<uint64_t>(slot));
  RngStream mp_eve = rng.stream("multipath-eve", static_cast<uint64_t>(slot));
  ch.multipath_bob = multipath_channels(mp_bob, sc.cfg.constants.multipath_count, ch.h_ab,
                                        sc.cfg.constants.multipath_excess_loss_db);
  ch.multipath_eve = multipath_channels(mp_eve, sc.cfg.constants.multipath_count, ch.h_ae,
                                        sc.cfg.constants.multipath_excess_loss_db);
  return ch;
}

std::pair<double, double> eve_angles(const Scenario& sc, int slot) {
  const Vec3 eve = sc.eve_positions.at(static_cast<size_t>(slot));
  return direction_angles(eve.normalized());
}

Orientation clamp_to_box(const Scenario& sc, double alpha, double beta) {
  return Orientation{std::clamp(alpha, sc.box_min.alpha, sc.box_max.alpha),
                     std::clamp(beta, sc.box_min.beta, sc.box_max.beta)};
}

Orientation eve_aligned_orientation(const Scenario& sc, int slot) {
  auto [theta, phi] = eve_angles(sc, slot);
  return clamp_to_box(sc, theta, phi);
}

}  // namespace risdm
