#include "risdm/rl/env.hpp"

#include <cmath>

namespace risdm {

RisEnv::RisEnv(const Scenario& sc) : sc_(sc), rng_(sc.cfg.seed) {}

RisEnv::StepResult RisEnv::step(int slot, const Orientation& action) const {
  ChannelSet ch = make_channels(sc_, slot, action, rng_);
  RngStream stage1 = rng_.stream("stage1", static_cast<uint64_t>(slot));
  MeasurementPlan plan = design_positioning_phases(ch, sc_.cfg.sensing.num_modes, sc_.pilot_eve,
                                                   sc_.pilot_bob, sc_.noise_sense, stage1);
  std::vector<Vec3> ris_positions = place_elements(sc_.ris_layout, action, Vec3::Zero());
  auto [theta_e, phi_e] = eve_angles(sc_, slot);
  CrlbReport report =
      fisher_information(theta_e, phi_e, plan, ch, ris_positions, sc_.consts.wavelength);

  StepResult out;
  out.state.crlb_theta = report.crlb_theta;
  out.state.crlb_phi = report.crlb_phi;
  out.feasible = crlb_feasible(report, sc_.cfg.sensing.crlb_threshold_rad2);
  if (!out.feasible) {
    // gated: zero reward, nominal all-signal power split
    out.state.b1 = sc_.consts.tx_power;
    out.state.b2 = 0.0;
    out.reward = 0.0;
    return out;
  }
  BeamformingSolution sol = sc_.cfg.rl.algorithm == "mnpl" ? mnpl_solve(ch, sc_.consts)
                                                           : el_solve(ch, sc_.consts);
  out.state.b1 = sol.w.squaredNorm();
  out.state.b2 = sol.v.squaredNorm();
  out.secrecy = sol.sr;
  out.reward = sol.sr - sc_.cfg.rl.penalty;
  return out;
}

EnvState RisEnv::initial_state(int slot) const {
  return step(slot, eve_aligned_orientation(sc_, slot)).state;
}

RVec RisEnv::featurize(const EnvState& s) const {
  auto crlb_feature = [](double c) {
    double safe = std::isfinite(c) ? std::max(c, 1e-12) : 1e6;
    return std::clamp(std::log10(safe), -12.0, 6.0) / 6.0;
  };
  RVec f(4);
  f(0) = s.b1 / sc_.consts.tx_power;
  f(1) = s.b2 / sc_.consts.tx_power;
  f(2) = crlb_feature(s.crlb_theta);
  f(3) = crlb_feature(s.crlb_phi);
  return f;
}

BoxBounds RisEnv::action_box() const {
  BoxBounds box;
  box.lo = Vec2(sc_.box_min.alpha, sc_.box_min.beta);
  box.hi = Vec2(sc_.box_max.alpha, sc_.box_max.beta);
  return box;
}

}  // namespace risdm
