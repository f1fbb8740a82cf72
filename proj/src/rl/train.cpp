#include "risdm/rl/train.hpp"

#include <fstream>
#include <functional>
#include <stdexcept>

#include <json.hpp>

namespace risdm {

ReplayBuffer::ReplayBuffer(int capacity) : capacity_(capacity) {
  if (capacity < 1) throw std::invalid_argument("ReplayBuffer: capacity must be >= 1");
  data_.reserve(static_cast<size_t>(capacity));
}

void ReplayBuffer::push(Transition t) {
  if (static_cast<int>(data_.size()) < capacity_) {
    data_.push_back(std::move(t));
  } else {
    data_[static_cast<size_t>(write_)] = std::move(t);
  }
  write_ = (write_ + 1) % capacity_;
}

Batch ReplayBuffer::sample(int batch_size, RngStream& rng) const {
  if (data_.empty()) throw std::runtime_error("ReplayBuffer: sampling from an empty buffer");
  const int state_dim = static_cast<int>(data_.front().state.size());
  Batch b;
  b.states.resize(state_dim, batch_size);
  b.actions.resize(2, batch_size);
  b.rewards.resize(batch_size);
  b.next_states.resize(state_dim, batch_size);
  b.done.resize(batch_size);
  for (int i = 0; i < batch_size; ++i) {
    size_t idx = static_cast<size_t>(rng.uniform() * static_cast<double>(data_.size()));
    if (idx >= data_.size()) idx = data_.size() - 1;
    const Transition& t = data_[idx];
    b.states.col(i) = t.state;
    b.actions.col(i) = t.action;
    b.rewards(i) = t.reward;
    b.next_states.col(i) = t.next_state;
    b.done(i) = t.done ? 1.0 : 0.0;
  }
  return b;
}

DsacConfig agent_config(const Scenario& sc) {
  const RlConfig& rl = sc.cfg.rl;
  DsacConfig cfg;
  cfg.hidden = rl.hidden;
  cfg.actor_lr = rl.actor_lr;
  cfg.critic_lr = rl.critic_lr;
  cfg.temperature_lr = rl.temperature_lr;
  cfg.discount = rl.discount;
  cfg.soft_update = rl.soft_update;
  cfg.sync_rate = rl.sync_rate;
  cfg.init_temperature = rl.init_temperature;
  cfg.adapt_temperature = rl.adapt_temperature;
  cfg.target_entropy = rl.target_entropy;
  cfg.clip_constant = rl.clip_constant;
  cfg.value_range_lo = rl.value_range_lo;
  cfg.value_range_hi = rl.value_range_hi;
  cfg.bound_range_lo = rl.bound_range_lo;
  cfg.bound_range_hi = rl.bound_range_hi;
  cfg.box.lo = Vec2(sc.box_min.alpha, sc.box_min.beta);
  cfg.box.hi = Vec2(sc.box_max.alpha, sc.box_max.beta);
  return cfg;
}

TrainResult train(const Scenario& sc, const TrainOptions& opts, uint64_t seed) {
  RisEnv env(sc);
  const RlConfig& rl = sc.cfg.rl;
  const int episodes = opts.episodes > 0 ? opts.episodes : rl.episodes;
  const int steps = opts.steps_per_episode > 0 ? opts.steps_per_episode : env.num_slots();

  SeededRng rng(seed);
  RngStream init_stream = rng.stream("init");
  RngStream explore_stream = rng.stream("explore");
  RngStream policy_stream = rng.stream("policy");
  RngStream update_stream = rng.stream("update");

  TrainResult result;
  result.agent = std::make_unique<DsacAgent>(agent_config(sc), init_stream);
  DsacAgent& agent = *result.agent;
  ReplayBuffer buffer(rl.buffer_capacity);
  BoxBounds box = env.action_box();

  for (int ep = 0; ep < episodes; ++ep) {
    RVec state = env.featurize(env.initial_state(0));
    double episode_reward = 0.0;
    for (int t = 0; t < steps; ++t) {
      Vec2 action;
      if (buffer.size() < rl.warmup) {
        action(0) = explore_stream.uniform(box.lo(0), box.hi(0));
        action(1) = explore_stream.uniform(box.lo(1), box.hi(1));
      } else {
        action = agent.sample_action(state, policy_stream).action;
      }
      int slot = t % env.num_slots();
      RisEnv::StepResult sr = env.step(slot, Orientation{action(0), action(1)});
      RVec next_state = env.featurize(sr.state);
      Transition tr;
      tr.state = state;
      tr.action = action;
      tr.reward = sr.reward;
      tr.next_state = next_state;
      tr.done = (t + 1 == steps);
      buffer.push(std::move(tr));
      episode_reward += sr.reward;
      state = next_state;

      if (buffer.size() >= rl.warmup) {
        Batch batch = buffer.sample(rl.batch, update_stream);
        DsacAgent::CriticStats cs = agent.critic_update(batch, update_stream);
        if (cs.aborted) {
          throw std::runtime_error("train: non-finite critic loss at episode " + std::to_string(ep));
        }
        DsacAgent::ActorStats as = agent.actor_update(batch, update_stream);
        if (as.aborted) {
          throw std::runtime_error("train: non-finite actor loss at episode " + std::to_string(ep));
        }
        agent.soft_update_targets();
      }
    }
    result.episode_rewards.push_back(episode_reward);
  }

  const int window = std::max(1, opts.smoothing_window);
  result.smoothed_rewards.resize(result.episode_rewards.size());
  double acc = 0.0;
  for (size_t i = 0; i < result.episode_rewards.size(); ++i) {
    acc += result.episode_rewards[i];
    if (i >= static_cast<size_t>(window)) acc -= result.episode_rewards[i - window];
    double denom = static_cast<double>(std::min<size_t>(i + 1, static_cast<size_t>(window)));
    result.smoothed_rewards[i] = acc / denom;
  }
  return result;
}

namespace {

EvalResult evaluate_with(const Scenario& sc, int num_seeds,
                         const std::function<Vec2(const RVec&, int)>& policy) {
  EvalResult out;
  double reward_acc = 0.0;
  int reward_count = 0;
  for (int k = 0; k < num_seeds; ++k) {
    ScenarioConfig cfg = sc.cfg;
    cfg.seed = sc.cfg.seed + 10000 + static_cast<uint64_t>(k);
    Scenario eval_sc = build_scenario(cfg);
    RisEnv env(eval_sc);
    RVec state = env.featurize(env.initial_state(0));
    double sr_acc = 0.0;
    for (int t = 0; t < env.num_slots(); ++t) {
      Vec2 a = policy(state, t);
      RisEnv::StepResult step = env.step(t, Orientation{a(0), a(1)});
      sr_acc += step.secrecy;
      reward_acc += step.reward;
      ++reward_count;
      state = env.featurize(step.state);
    }
    out.per_seed_secrecy.push_back(sr_acc / env.num_slots());
  }
  out.mean_secrecy = 0.0;
  for (double v : out.per_seed_secrecy) out.mean_secrecy += v;
  out.mean_secrecy /= static_cast<double>(num_seeds);
  out.mean_reward = reward_acc / reward_count;
  return out;
}

}  // namespace

EvalResult evaluate_greedy(const Scenario& sc, const DsacAgent& agent, int num_seeds) {
  return evaluate_with(sc, num_seeds,
                       [&](const RVec& state, int) { return agent.greedy_action(state); });
}

EvalResult evaluate_eve_aligned(const Scenario& sc, int num_seeds) {
  return evaluate_with(sc, num_seeds, [&](const RVec&, int t) {
    Orientation o = eve_aligned_orientation(sc, t);
    return Vec2(o.alpha, o.beta);
  });
}

namespace {

using nlohmann::json;

json net_to_json(const Mlp& net) {
  json j;
  j["dims"] = net.dims();
  json weights = json::array();
  json biases = json::array();
  for (const RMat& w : net.weights()) {
    json flat = json::array();
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) flat.push_back(w(r, c));
    }
    weights.push_back(std::move(flat));
  }
  for (const RVec& b : net.biases()) {
    json flat = json::array();
    for (Eigen::Index i = 0; i < b.size(); ++i) flat.push_back(b(i));
    biases.push_back(std::move(flat));
  }
  j["weights"] = std::move(weights);
  j["biases"] = std::move(biases);
  return j;
}

void net_from_json(const json& j, Mlp& net) {
  std::vector<int> dims = j.at("dims").get<std::vector<int>>();
  if (dims != net.dims()) throw std::runtime_error("checkpoint: network shape mismatch");
  const json& weights = j.at("weights");
  const json& biases = j.at("biases");
  for (int l = 0; l < net.num_layers(); ++l) {
    RMat& w = net.weights()[static_cast<size_t>(l)];
    const json& flat = weights.at(static_cast<size_t>(l));
    if (static_cast<Eigen::Index>(flat.size()) != w.size()) {
      throw std::runtime_error("checkpoint: weight count mismatch");
    }
    size_t k = 0;
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = flat.at(k++).get<double>();
    }
    RVec& b = net.biases()[static_cast<size_t>(l)];
    const json& bflat = biases.at(static_cast<size_t>(l));
    if (static_cast<Eigen::Index>(bflat.size()) != b.size()) {
      throw std::runtime_error("checkpoint: bias count mismatch");
    }
    for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = bflat.at(static_cast<size_t>(i)).get<double>();
  }
}

}  // namespace

void save_checkpoint(const DsacAgent& agent, const std::filesystem::path& path) {
  json j;
  j["format"] = "ris-dm-lab-checkpoint";
  j["version"] = 1;
  j["state_dim"] = agent.config().state_dim;
  j["action_dim"] = agent.config().action_dim;
  j["hidden"] = agent.config().hidden;
  j["temperature"] = agent.temperature();
  j["box"] = {{"alpha_min", agent.config().box.lo(0)},
              {"alpha_max", agent.config().box.hi(0)},
              {"beta_min", agent.config().box.lo(1)},
              {"beta_max", agent.config().box.hi(1)}};
  DsacAgent& mutable_agent = const_cast<DsacAgent&>(agent);
  j["clip_bounds"] = {mutable_agent.clip_bound(0), mutable_agent.clip_bound(1)};
  j["grad_weights"] = {mutable_agent.grad_weight(0), mutable_agent.grad_weight(1)};
  j["nets"] = {{"actor", net_to_json(agent.actor())},
               {"critic1", net_to_json(agent.critic(0))},
               {"critic2", net_to_json(agent.critic(1))},
               {"target_actor", net_to_json(agent.target_actor())},
               {"target_critic1", net_to_json(agent.target_critic(0))},
               {"target_critic2", net_to_json(agent.target_critic(1))}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_checkpoint: cannot open " + path.string());
  out << j.dump();
}

std::unique_ptr<DsacAgent> load_checkpoint(const std::filesystem::path& path,
                                           const DsacConfig& cfg) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_checkpoint: cannot open " + path.string());
  json j = json::parse(in);
  if (j.at("format").get<std::string>() != "ris-dm-lab-checkpoint") {
    throw std::runtime_error("load_checkpoint: unrecognized format");
  }
  DsacConfig use = cfg;
  use.hidden = j.at("hidden").get<int>();
  use.state_dim = j.at("state_dim").get<int>();
  use.action_dim = j.at("action_dim").get<int>();
  RngStream dummy(0);
  auto agent = std::make_unique<DsacAgent>(use, dummy);
  const json& nets = j.at("nets");
  net_from_json(nets.at("actor"), agent->actor());
  net_from_json(nets.at("critic1"), agent->critic(0));
  net_from_json(nets.at("critic2"), agent->critic(1));
  net_from_json(nets.at("target_actor"), agent->target_actor());
  net_from_json(nets.at("target_critic1"), agent->target_critic(0));
  net_from_json(nets.at("target_critic2"), agent->target_critic(1));
  agent->log_temperature() = std::log(j.at("temperature").get<double>());
  agent->clip_bound(0) = j.at("clip_bounds").at(0).get<double>();
  agent->clip_bound(1) = j.at("clip_bounds").at(1).get<double>();
  agent->grad_weight(0) = j.at("grad_weights").at(0).get<double>();
  agent->grad_weight(1) = j.at("grad_weights").at(1).get<double>();
  return agent;
}

}  // namespace risdm
