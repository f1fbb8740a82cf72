#ifndef RISDM_RL_MLP_HPP
#define RISDM_RL_MLP_HPP

#include <vector>

#include "risdm/rng.hpp"
#include "risdm/types.hpp"

namespace risdm {

struct MlpGradients {
  std::vector<RMat> w;
  std::vector<RVec> b;
};

// Dense multilayer perceptron, tanh hidden activations, linear output.
// Batches are column-major: input d_in x B, output d_out x B. Backward is
// hand-rolled reverse mode over the layer tapes.
class Mlp {
 public:
  Mlp() = default;
  Mlp(std::vector<int> dims, RngStream& init_rng);

  RMat forward(const RMat& x) const;

  struct Tape {
    RMat input;
    std::vector<RMat> hidden;  // post-activation per hidden layer
  };
  RMat forward(const RMat& x, Tape& tape) const;

  // Accumulates parameter gradients for dL/d(output) = grad_out; optionally
  // returns dL/d(input).
  void backward(const Tape& tape, const RMat& grad_out, MlpGradients& grads,
                RMat* grad_input = nullptr) const;

  MlpGradients zero_gradients() const;
  void soft_update_from(const Mlp& src, double tau);

  const std::vector<int>& dims() const { return dims_; }
  int num_layers() const { return static_cast<int>(w_.size()); }
  std::vector<RMat>& weights() { return w_; }
  std::vector<RVec>& biases() { return b_; }
  const std::vector<RMat>& weights() const { return w_; }
  const std::vector<RVec>& biases() const { return b_; }

 private:
  std::vector<int> dims_;
  std::vector<RMat> w_;
  std::vector<RVec> b_;
};

// Adam optimizer over one network's parameters (gradient descent step).
class Adam {
 public:
  explicit Adam(double lr) : lr_(lr) {}
  void step(Mlp& net, const MlpGradients& grads);

 private:
  double lr_;
  double beta1_ = 0.9;
  double beta2_ = 0.999;
  double eps_ = 1e-8;
  long t_ = 0;
  std::vector<RMat> mw_, vw_;
  std::vector<RVec> mb_, vb_;
};

}  // namespace risdm

#endif
