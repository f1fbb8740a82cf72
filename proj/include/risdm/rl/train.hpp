#ifndef RISDM_RL_TRAIN_HPP
#define RISDM_RL_TRAIN_HPP

#include <filesystem>
#include <memory>

#include "risdm/rl/env.hpp"

namespace risdm {

// Fixed-capacity transition store with uniform sampling.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(int capacity);
  void push(Transition t);
  Batch sample(int batch_size, RngStream& rng) const;
  int size() const { return static_cast<int>(data_.size()); }

 private:
  int capacity_;
  int write_ = 0;
  std::vector<Transition> data_;
};

struct TrainOptions {
  int episodes = 0;          // 0 -> scenario rl.episodes
  int steps_per_episode = 0;  // 0 -> scenario slot count
  int smoothing_window = 10;
};

struct TrainResult {
  std::vector<double> episode_rewards;
  std::vector<double> smoothed_rewards;  // sliding-window mean
  std::unique_ptr<DsacAgent> agent;
};

DsacConfig agent_config(const Scenario& sc);

// Full training loop: per environment step one critic update, one actor
// update and one target sync once the warm-up is filled. Single-threaded and
// bit-reproducible for a fixed (scenario, seed).
TrainResult train(const Scenario& sc, const TrainOptions& opts, uint64_t seed);

struct EvalResult {
  double mean_secrecy = 0.0;
  double mean_reward = 0.0;
  std::vector<double> per_seed_secrecy;
};

// Greedy rollouts of the policy mean over fresh scenario seeds.
EvalResult evaluate_greedy(const Scenario& sc, const DsacAgent& agent, int num_seeds);

// Same rollouts with the Eve-aligned orientation instead of the policy.
EvalResult evaluate_eve_aligned(const Scenario& sc, int num_seeds);

// JSON weight dump with a shape manifest; restores bit-identical doubles.
void save_checkpoint(const DsacAgent& agent, const std::filesystem::path& path);
std::unique_ptr<DsacAgent> load_checkpoint(const std::filesystem::path& path,
                                           const DsacConfig& cfg);

}  // namespace risdm

#endif
