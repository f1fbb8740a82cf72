#include "risdm/rl/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace risdm {

Mlp::Mlp(std::vector<int> dims, RngStream& init_rng) : dims_(std::move(dims)) {
  if (dims_.size() < 2) throw std::invalid_argument("Mlp: need at least input and output dims");
  for (size_t i = 0; i + 1 < dims_.size(); ++i) {
    int fan_in = dims_[i];
    int fan_out = dims_[i + 1];
    double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    RMat w(fan_out, fan_in);
    for (int r = 0; r < fan_out; ++r) {
      for (int c = 0; c < fan_in; ++c) w(r, c) = init_rng.uniform(-bound, bound);
    }
    w_.push_back(std::move(w));
    b_.push_back(RVec::Zero(fan_out));
  }
}

RMat Mlp::forward(const RMat& x) const {
  Tape tape;
  return forward(x, tape);
}

RMat Mlp::forward(const RMat& x, Tape& tape) const {
  tape.input = x;
  tape.hidden.clear();
  RMat h = x;
  for (int l = 0; l < num_layers(); ++l) {
    RMat z = (w_[static_cast<size_t>(l)] * h).colwise() + b_[static_cast<size_t>(l)];
    if (l + 1 < num_layers()) {
      h = z.array().tanh();
      tape.hidden.push_back(h);
    } else {
      h = std::move(z);
    }
  }
  return h;
}

void Mlp::backward(const Tape& tape, const RMat& grad_out, MlpGradients& grads,
                   RMat* grad_input) const {
  const int layers = num_layers();
  RMat g = grad_out;  // dL/dz of the current layer (output layer is linear)
  for (int l = layers - 1; l >= 0; --l) {
    const RMat& below = l == 0 ? tape.input : tape.hidden[static_cast<size_t>(l - 1)];
    grads.w[static_cast<size_t>(l)] += g * below.transpose();
    grads.b[static_cast<size_t>(l)] += g.rowwise().sum();
    if (l == 0) {
      if (grad_input) *grad_input = w_[0].transpose() * g;
      break;
    }
    RMat gh = w_[static_cast<size_t>(l)].transpose() * g;
    const RMat& h = tape.hidden[static_cast<size_t>(l - 1)];
    g = gh.array() * (1.0 - h.array().square());
  }
}

MlpGradients Mlp::zero_gradients() const {
  MlpGradients g;
  for (const RMat& w : w_) g.w.push_back(RMat::Zero(w.rows(), w.cols()));
  for (const RVec& b : b_) g.b.push_back(RVec::Zero(b.size()));
  return g;
}

void Mlp::soft_update_from(const Mlp& src, double tau) {
  for (size_t l = 0; l < w_.size(); ++l) {
    w_[l] = tau * src.w_[l] + (1.0 - tau) * w_[l];
    b_[l] = tau * src.b_[l] + (1.0 - tau) * b_[l];
  }
}

void Adam::step(Mlp& net, const MlpGradients& grads) {
  if (mw_.empty()) {
    for (const RMat& w : net.weights()) {
      mw_.push_back(RMat::Zero(w.rows(), w.cols()));
      vw_.push_back(RMat::Zero(w.rows(), w.cols()));
    }
    for (const RVec& b : net.biases()) {
      mb_.push_back(RVec::Zero(b.size()));
      vb_.push_back(RVec::Zero(b.size()));
    }
  }
  ++t_;
  double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (size_t l = 0; l < mw_.size(); ++l) {
    mw_[l] = beta1_ * mw_[l] + (1.0 - beta1_) * grads.w[l];
    vw_[l] = beta2_ * vw_[l].array().matrix() + (1.0 - beta2_) * grads.w[l].cwiseProduct(grads.w[l]);
    RMat m_hat = mw_[l] / bc1;
    RMat v_hat = vw_[l] / bc2;
    net.weights()[l] -= lr_ * (m_hat.array() / (v_hat.array().sqrt() + eps_)).matrix();

    mb_[l] = beta1_ * mb_[l] + (1.0 - beta1_) * grads.b[l];
    vb_[l] = beta2_ * vb_[l] + (1.0 - beta2_) * grads.b[l].cwiseProduct(grads.b[l]);
    RVec mb_hat = mb_[l] / bc1;
    RVec vb_hat = vb_[l] / bc2;
    net.biases()[l] -= lr_ * (mb_hat.array() / (vb_hat.array().sqrt() + eps_)).matrix();
  }
}

}  // namespace risdm
