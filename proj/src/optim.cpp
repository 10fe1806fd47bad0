#include "rouser/optim.hpp"

#include <cmath>
#include <stdexcept>

namespace rouser {

AdamState init_adam_state(const Network& net) {
  AdamState state;
  state.layers.resize(net.layers.size());
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    const auto& layer = net.layers[l];
    auto& group = state.layers[l];
    group.m_weights = Eigen::MatrixXd::Zero(layer.weights.rows(), layer.weights.cols());
    group.v_weights = Eigen::MatrixXd::Zero(layer.weights.rows(), layer.weights.cols());
    group.m_thresholds = Eigen::VectorXd::Zero(layer.thresholds.size());
    group.v_thresholds = Eigen::VectorXd::Zero(layer.thresholds.size());
  }
  return state;
}

namespace {

template <typename Param, typename Grad, typename Moment>
void adam_update(Param& param, const Grad& grad, Moment& m, Moment& v,
                 double lr, double bias1, double bias2) {
  m = AdamState::kBeta1 * m + (1.0 - AdamState::kBeta1) * grad;
  v = AdamState::kBeta2 * v + (1.0 - AdamState::kBeta2) * grad.cwiseProduct(grad);
  // lr = 0 must leave the parameters bit-identical, so skip the update
  // entirely rather than subtracting a signed zero.
  if (lr != 0.0)
    param -= lr * (m / bias1).cwiseQuotient(
                      ((v / bias2).cwiseSqrt().array() + AdamState::kEpsilon).matrix());
}

}  // namespace

void adam_step(Network& net, const GradientSet& grads, AdamState& state,
               const Hyperparams& hp) {
  if (grads.layers.size() != net.layers.size() ||
      state.layers.size() != net.layers.size())
    throw std::invalid_argument("adam_step: layer count mismatch");

  state.step_count += 1;
  const double bias1 = 1.0 - std::pow(AdamState::kBeta1, double(state.step_count));
  const double bias2 = 1.0 - std::pow(AdamState::kBeta2, double(state.step_count));

  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    auto& layer = net.layers[l];
    const auto& g = grads.layers[l];
    auto& group = state.layers[l];
    if (g.d_weights.rows() != layer.weights.rows() ||
        g.d_weights.cols() != layer.weights.cols() ||
        g.d_thresholds.size() != layer.thresholds.size())
      throw std::invalid_argument("adam_step: gradient shape mismatch at layer " +
                                  std::to_string(l));

    adam_update(layer.weights, g.d_weights, group.m_weights, group.v_weights,
                hp.lr_w, bias1, bias2);
    adam_update(layer.thresholds, g.d_thresholds, group.m_thresholds,
                group.v_thresholds, hp.lr_th, bias1, bias2);
    if (hp.th_clamp_min && hp.lr_th != 0.0)
      layer.thresholds = layer.thresholds.cwiseMax(*hp.th_clamp_min);
  }
}

}  // namespace rouser
