#ifndef RISDM_RL_ENV_HPP
#define RISDM_RL_ENV_HPP

#include "risdm/beamforming.hpp"
#include "risdm/rl/agent.hpp"
#include "risdm/scenario.hpp"
#include "risdm/sensing.hpp"

namespace risdm {

// Observed environment state: power split of the last solution plus the
// CRLB diagonal of the last positioning stage.
struct EnvState {
  double b1 = 0.0;  // ||w||^2
  double b2 = 0.0;  // ||v||^2
  double crlb_theta = std::numeric_limits<double>::infinity();
  double crlb_phi = std::numeric_limits<double>::infinity();
};

// Two-stage pipeline behind a gymnasium-style step interface. Every step
// re-runs positioning-mode design and the CRLB gate at the commanded
// orientation; the beamforming solver only runs when the gate passes.
// All randomness is keyed on (scenario seed, slot), so a step is a pure
// function of (scenario, slot, action).
class RisEnv {
 public:
  explicit RisEnv(const Scenario& sc);

  struct StepResult {
    EnvState state;
    double reward = 0.0;
    bool feasible = false;
    double secrecy = 0.0;  // solved secrecy rate (0 when gated)
  };

  StepResult step(int slot, const Orientation& action) const;
  EnvState initial_state(int slot = 0) const;

  RVec featurize(const EnvState& s) const;
  BoxBounds action_box() const;

  const Scenario& scenario() const { return sc_; }
  int num_slots() const { return sc_.num_slots(); }

 private:
  Scenario sc_;
  SeededRng rng_;
};

}  // namespace risdm

#endif
