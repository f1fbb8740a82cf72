#ifndef RISDM_RL_AGENT_HPP
#define RISDM_RL_AGENT_HPP

#include <optional>

#include "risdm/rl/mlp.hpp"

namespace risdm {

struct BoxBounds {
  Vec2 lo;
  Vec2 hi;
};

struct ActionSample {
  Vec2 action;
  double log_prob = 0.0;
  Vec2 pre_tanh;
};

// Reparameterized tanh-squashed Gaussian mapped affinely into the box; the
// log density carries the tanh and affine change-of-variables terms.
// log-stds are clamped to [-20, 2].
ActionSample squashed_gaussian_sample(const Vec2& mean, const Vec2& log_std, const BoxBounds& box,
                                      RngStream& rng);
Vec2 squashed_mean_action(const Vec2& mean, const BoxBounds& box);

struct DsacConfig {
  int state_dim = 4;
  int action_dim = 2;
  int hidden = 256;
  double actor_lr = 3e-4;
  double critic_lr = 3e-4;
  double temperature_lr = 3e-4;
  double discount = 0.99;
  double soft_update = 0.005;   // target network coefficient
  double sync_rate = 0.005;     // bound/weight synchronization rate
  double init_temperature = 0.01;
  bool adapt_temperature = true;
  double target_entropy = -2.0;
  double clip_constant = 3.0;  // multiplies E[sigma] in the clip bound
  double value_range_lo = 0.0;
  double value_range_hi = 30.0;
  double bound_range_lo = 0.5;  // adaptive bound clamp, relative to the initial bound
  double bound_range_hi = 2.0;
  double grad_epsilon = 1e-6;        // denominator guard in the critic gradient
  double weight_epsilon = 1e-6;      // added to the gradient scaling weight
  BoxBounds box{Vec2(-1.0, -1.0), Vec2(1.0, 1.0)};
};

struct Transition {
  RVec state;
  Vec2 action;
  double reward = 0.0;
  RVec next_state;
  bool done = false;
};

struct Batch {
  RMat states;       // state_dim x B
  RMat actions;      // action_dim x B
  RVec rewards;      // B
  RMat next_states;  // state_dim x B
  RVec done;         // B, 1 when terminal
  Eigen::Index size() const { return rewards.size(); }
};

// Distributional soft actor-critic with twin Gaussian value distributions,
// expected-value targets, variance-clipped random returns, and
// reward-scale-adaptive gradient weights.
class DsacAgent {
 public:
  DsacAgent(const DsacConfig& cfg, RngStream& init_rng);

  ActionSample sample_action(const RVec& state, RngStream& rng) const;
  Vec2 greedy_action(const RVec& state) const;

  struct CriticStats {
    bool aborted = false;
    double mean_q1 = 0.0, mean_q2 = 0.0;
    double mean_sigma1 = 0.0, mean_sigma2 = 0.0;
    RVec target_q1, target_q2;  // per-sample target critic means at (s', a')
    RVec log_prob_next;
    RVec y2;  // targets actually used
  };
  CriticStats critic_update(const Batch& batch, RngStream& rng);

  struct ActorStats {
    bool aborted = false;
    double entropy = 0.0;
    double temperature = 0.0;
    double loss = 0.0;
  };
  ActorStats actor_update(const Batch& batch, RngStream& rng);

  void soft_update_targets();

  double temperature() const { return std::exp(log_temperature_); }
  const DsacConfig& config() const { return cfg_; }

  // Q-distribution of the two online critics for one (s, a); test hook.
  struct ValueEstimate {
    double q1, sigma1, q2, sigma2;
  };
  ValueEstimate value_estimate(const RVec& state, const Vec2& action) const;

  // serialization access
  Mlp& actor() { return actor_; }
  Mlp& critic(int i) { return i == 0 ? critic1_ : critic2_; }
  Mlp& target_actor() { return target_actor_; }
  Mlp& target_critic(int i) { return i == 0 ? target_critic1_ : target_critic2_; }
  const Mlp& actor() const { return actor_; }
  const Mlp& critic(int i) const { return i == 0 ? critic1_ : critic2_; }
  const Mlp& target_actor() const { return target_actor_; }
  const Mlp& target_critic(int i) const { return i == 0 ? target_critic1_ : target_critic2_; }
  double& log_temperature() { return log_temperature_; }
  double& clip_bound(int i) { return b_bar_[i]; }
  double& grad_weight(int i) { return omega_[i]; }

 private:
  struct CriticEval {
    RVec q;
    RVec sigma;
    RMat raw;  // network output, 2 x B
    Mlp::Tape tape;
  };
  CriticEval eval_critic(const Mlp& net, const RMat& states, const RMat& actions) const;
  RMat normalize_actions(const RMat& actions) const;

  DsacConfig cfg_;
  Mlp actor_, critic1_, critic2_;
  Mlp target_actor_, target_critic1_, target_critic2_;
  Adam actor_opt_, critic1_opt_, critic2_opt_;
  double log_temperature_ = 0.0;
  double b_bar_[2];
  double b_bar_init_ = 0.0;
  double omega_[2];
};

}  // namespace risdm

#endif
