#include "risdm/rl/agent.hpp"

#include <cmath>
#include <stdexcept>

namespace risdm {

namespace {

constexpr double kLogStdMin = -20.0;
constexpr double kLogStdMax = 2.0;
constexpr double kSigmaMin = 1e-3;
constexpr double kHalfLog2Pi = 0.91893853320467274178;  // 0.5 * log(2*pi)

double softplus(double x) {
  if (x > 30.0) return x;
  if (x < -30.0) return std::exp(x);
  return std::log1p(std::exp(x));
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// log(1 - tanh(u)^2), stable for large |u|
double log_one_minus_tanh_sq(double u) {
  return 2.0 * (std::log(2.0) - u - softplus(-2.0 * u));
}

}  // namespace

ActionSample squashed_gaussian_sample(const Vec2& mean, const Vec2& log_std, const BoxBounds& box,
                                      RngStream& rng) {
  ActionSample out;
  out.log_prob = 0.0;
  for (int d = 0; d < 2; ++d) {
    double ls = std::clamp(log_std(d), kLogStdMin, kLogStdMax);
    double sigma = std::exp(ls);
    double z = rng.gaussian();
    double u = mean(d) + sigma * z;
    double t = std::tanh(u);
    double half_width = 0.5 * (box.hi(d) - box.lo(d));
    out.pre_tanh(d) = u;
    out.action(d) = box.lo(d) + half_width * (t + 1.0);
    out.log_prob += -0.5 * z * z - ls - kHalfLog2Pi;
    out.log_prob -= log_one_minus_tanh_sq(u) + std::log(half_width);
  }
  return out;
}

Vec2 squashed_mean_action(const Vec2& mean, const BoxBounds& box) {
  Vec2 a;
  for (int d = 0; d < 2; ++d) {
    double t = std::tanh(mean(d));
    a(d) = box.lo(d) + 0.5 * (box.hi(d) - box.lo(d)) * (t + 1.0);
  }
  return a;
}

DsacAgent::DsacAgent(const DsacConfig& cfg, RngStream& init_rng)
    : cfg_(cfg),
      actor_({cfg.state_dim, cfg.hidden, cfg.hidden, 2 * cfg.action_dim}, init_rng),
      critic1_({cfg.state_dim + cfg.action_dim, cfg.hidden, cfg.hidden, 2}, init_rng),
      critic2_({cfg.state_dim + cfg.action_dim, cfg.hidden, cfg.hidden, 2}, init_rng),
      actor_opt_(cfg.actor_lr),
      critic1_opt_(cfg.critic_lr),
      critic2_opt_(cfg.critic_lr),
      log_temperature_(std::log(cfg.init_temperature)) {
  target_actor_ = actor_;
  target_critic1_ = critic1_;
  target_critic2_ = critic2_;
  b_bar_init_ = 0.5 * (cfg.value_range_hi - cfg.value_range_lo);
  b_bar_[0] = b_bar_[1] = b_bar_init_;
  omega_[0] = omega_[1] = 1.0;
}

RMat DsacAgent::normalize_actions(const RMat& actions) const {
  RMat out(actions.rows(), actions.cols());
  for (int d = 0; d < cfg_.action_dim; ++d) {
    double lo = cfg_.box.lo(d), hi = cfg_.box.hi(d);
    out.row(d) = (2.0 * (actions.row(d).array() - lo) / (hi - lo) - 1.0).matrix();
  }
  return out;
}

DsacAgent::CriticEval DsacAgent::eval_critic(const Mlp& net, const RMat& states,
                                             const RMat& actions) const {
  CriticEval ev;
  RMat input(states.rows() + actions.rows(), states.cols());
  input.topRows(states.rows()) = states;
  input.bottomRows(actions.rows()) = normalize_actions(actions);
  ev.raw = net.forward(input, ev.tape);
  ev.q = ev.raw.row(0).transpose();
  ev.sigma = RVec(ev.raw.cols());
  for (Eigen::Index i = 0; i < ev.raw.cols(); ++i) {
    ev.sigma(i) = softplus(ev.raw(1, i)) + kSigmaMin;
  }
  return ev;
}

ActionSample DsacAgent::sample_action(const RVec& state, RngStream& rng) const {
  RMat out = actor_.forward(state);
  Vec2 mean(out(0, 0), out(1, 0));
  Vec2 log_std(out(2, 0), out(3, 0));
  return squashed_gaussian_sample(mean, log_std, cfg_.box, rng);
}

Vec2 DsacAgent::greedy_action(const RVec& state) const {
  RMat out = actor_.forward(state);
  return squashed_mean_action(Vec2(out(0, 0), out(1, 0)), cfg_.box);
}

DsacAgent::ValueEstimate DsacAgent::value_estimate(const RVec& state, const Vec2& action) const {
  RMat s = state;
  RMat a = action;
  CriticEval e1 = eval_critic(critic1_, s, a);
  CriticEval e2 = eval_critic(critic2_, s, a);
  return {e1.q(0), e1.sigma(0), e2.q(0), e2.sigma(0)};
}

DsacAgent::CriticStats DsacAgent::critic_update(const Batch& batch, RngStream& rng) {
  const Eigen::Index n = batch.size();
  if (n == 0) throw std::invalid_argument("critic_update: empty batch");
  CriticStats stats;

  // next actions from the target policy
  RMat next_out = target_actor_.forward(batch.next_states);
  RMat next_actions(cfg_.action_dim, n);
  RVec log_prob_next(n);
  RVec return_noise(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Vec2 mean(next_out(0, i), next_out(1, i));
    Vec2 log_std(next_out(2, i), next_out(3, i));
    ActionSample s = squashed_gaussian_sample(mean, log_std, cfg_.box, rng);
    next_actions.col(i) = s.action;
    log_prob_next(i) = s.log_prob;
    return_noise(i) = rng.gaussian();
  }

  CriticEval t1 = eval_critic(target_critic1_, batch.next_states, next_actions);
  CriticEval t2 = eval_critic(target_critic2_, batch.next_states, next_actions);

  const double iota = temperature();
  const double gamma = cfg_.discount;
  RVec y2(n), y1(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    // twin-min: both targets come from the critic with the smaller mean
    bool first = t1.q(i) <= t2.q(i);
    double q_min = first ? t1.q(i) : t2.q(i);
    double sigma_min = first ? t1.sigma(i) : t2.sigma(i);
    double z_sample = q_min + sigma_min * return_noise(i);
    double mask = batch.done(i) > 0.5 ? 0.0 : 1.0;
    double soft = iota * log_prob_next(i);
    y2(i) = batch.rewards(i) + gamma * mask * (q_min - soft);
    y1(i) = batch.rewards(i) + gamma * mask * (z_sample - soft);
  }
  stats.target_q1 = t1.q;
  stats.target_q2 = t2.q;
  stats.log_prob_next = log_prob_next;
  stats.y2 = y2;

  Mlp* critics[2] = {&critic1_, &critic2_};
  Adam* opts[2] = {&critic1_opt_, &critic2_opt_};
  double mean_q[2] = {0.0, 0.0};
  double mean_sigma[2] = {0.0, 0.0};
  const double eps = cfg_.grad_epsilon;
  for (int c = 0; c < 2; ++c) {
    CriticEval ev = eval_critic(*critics[c], batch.states, batch.actions);
    mean_q[c] = ev.q.mean();
    mean_sigma[c] = ev.sigma.mean();

    RMat grad_out = RMat::Zero(2, n);
    double scale = (omega_[c] + cfg_.weight_epsilon) / static_cast<double>(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      double q = ev.q(i);
      double sigma = ev.sigma(i);
      double clipped = std::clamp(y1(i), q - b_bar_[c], q + b_bar_[c]);
      double gq = -(y2(i) - q) / (sigma * sigma + eps);
      double gs = -((clipped - q) * (clipped - q) - sigma * sigma) / (sigma * sigma * sigma + eps);
      grad_out(0, i) = scale * gq;
      grad_out(1, i) = scale * gs * sigmoid(ev.raw(1, i));
    }
    if (!grad_out.allFinite()) {
      stats.aborted = true;
      return stats;
    }
    MlpGradients grads = critics[c]->zero_gradients();
    critics[c]->backward(ev.tape, grad_out, grads);
    opts[c]->step(*critics[c], grads);

    // bound and gradient-weight synchronization
    double sigma_mean = mean_sigma[c];
    double sigma_sq_mean = ev.sigma.array().square().mean();
    b_bar_[c] = cfg_.sync_rate * cfg_.clip_constant * sigma_mean + (1.0 - cfg_.sync_rate) * b_bar_[c];
    b_bar_[c] = std::clamp(b_bar_[c], cfg_.bound_range_lo * b_bar_init_,
                           cfg_.bound_range_hi * b_bar_init_);
    omega_[c] = cfg_.sync_rate * sigma_sq_mean + (1.0 - cfg_.sync_rate) * omega_[c];
  }
  stats.mean_q1 = mean_q[0];
  stats.mean_q2 = mean_q[1];
  stats.mean_sigma1 = mean_sigma[0];
  stats.mean_sigma2 = mean_sigma[1];
  return stats;
}

DsacAgent::ActorStats DsacAgent::actor_update(const Batch& batch, RngStream& rng) {
  const Eigen::Index n = batch.size();
  if (n == 0) throw std::invalid_argument("actor_update: empty batch");
  ActorStats stats;

  Mlp::Tape actor_tape;
  RMat out = actor_.forward(batch.states, actor_tape);

  RMat actions(cfg_.action_dim, n);
  RMat eps(cfg_.action_dim, n);
  RMat tanh_u(cfg_.action_dim, n);
  RMat sigma(cfg_.action_dim, n);
  RMat clamp_mask(cfg_.action_dim, n);
  RVec log_prob(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double lp = 0.0;
    for (int d = 0; d < cfg_.action_dim; ++d) {
      double raw_ls = out(cfg_.action_dim + d, i);
      double ls = std::clamp(raw_ls, kLogStdMin, kLogStdMax);
      clamp_mask(d, i) = (raw_ls > kLogStdMin && raw_ls < kLogStdMax) ? 1.0 : 0.0;
      double sd = std::exp(ls);
      double z = rng.gaussian();
      double u = out(d, i) + sd * z;
      double t = std::tanh(u);
      double half_width = 0.5 * (cfg_.box.hi(d) - cfg_.box.lo(d));
      eps(d, i) = z;
      sigma(d, i) = sd;
      tanh_u(d, i) = t;
      actions(d, i) = cfg_.box.lo(d) + half_width * (t + 1.0);
      lp += -0.5 * z * z - ls - kHalfLog2Pi;
      lp -= log_one_minus_tanh_sq(u) + std::log(half_width);
    }
    log_prob(i) = lp;
  }

  CriticEval e1 = eval_critic(critic1_, batch.states, actions);
  CriticEval e2 = eval_critic(critic2_, batch.states, actions);
  RMat sel1 = RMat::Zero(2, n), sel2 = RMat::Zero(2, n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (e1.q(i) <= e2.q(i)) {
      sel1(0, i) = -inv_n;  // d mean(-q_min) / d q1
    } else {
      sel2(0, i) = -inv_n;
    }
  }
  MlpGradients scratch1 = critic1_.zero_gradients();
  MlpGradients scratch2 = critic2_.zero_gradients();
  RMat gin1, gin2;
  critic1_.backward(e1.tape, sel1, scratch1, &gin1);
  critic2_.backward(e2.tape, sel2, scratch2, &gin2);
  // gradient w.r.t. the normalized action input of the min critic
  RMat grad_anorm = gin1.bottomRows(cfg_.action_dim) + gin2.bottomRows(cfg_.action_dim);

  const double iota = temperature();
  RMat grad_out = RMat::Zero(2 * cfg_.action_dim, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int d = 0; d < cfg_.action_dim; ++d) {
      double t = tanh_u(d, i);
      double one_m_t2 = 1.0 - t * t;
      // the affine box map and the critic input normalization cancel up to
      // the tanh factor: d(-q)/du = grad_anorm * (1 - tanh^2)
      double dq_du = grad_anorm(d, i) * one_m_t2;
      double dlogp_du_tanh = 2.0 * t;
      grad_out(d, i) = iota * inv_n * dlogp_du_tanh + dq_du;
      double du_dls = sigma(d, i) * eps(d, i);
      grad_out(cfg_.action_dim + d, i) =
          (iota * inv_n * (-1.0 + dlogp_du_tanh * du_dls) + dq_du * du_dls) * clamp_mask(d, i);
    }
  }
  if (!grad_out.allFinite()) {
    stats.aborted = true;
    return stats;
  }
  MlpGradients grads = actor_.zero_gradients();
  actor_.backward(actor_tape, grad_out, grads);
  actor_opt_.step(actor_, grads);

  double entropy = -log_prob.mean();
  stats.entropy = entropy;
  RVec q_min = e1.q.cwiseMin(e2.q);
  stats.loss = iota * log_prob.mean() - q_min.mean();
  if (cfg_.adapt_temperature) {
    double delta = entropy - cfg_.target_entropy;
    log_temperature_ -= cfg_.temperature_lr * delta;
    log_temperature_ = std::clamp(log_temperature_, -20.0, 10.0);
  }
  stats.temperature = temperature();
  return stats;
}

void DsacAgent::soft_update_targets() {
  target_actor_.soft_update_from(actor_, cfg_.soft_update);
  target_critic1_.soft_update_from(critic1_, cfg_.soft_update);
  target_critic2_.soft_update_from(critic2_, cfg_.soft_update);
}

}  // namespace risdm
