#pragma once

#include <Eigen/Core>
#include <vector>

#include "rouser/network.hpp"

namespace rouser {

// Desired output spike rates, one entry per output neuron.
using TargetRates = Eigen::VectorXd;

// true_rate at the labelled index, false_rate elsewhere.
TargetRates target_rates_for_label(int label, int num_outputs, const Hyperparams& hp);

// Per-layer gradients mirroring LayerParams shapes.
struct GradientSet {
  struct LayerGrads {
    Eigen::MatrixXd d_weights;
    Eigen::VectorXd d_thresholds;
  };
  std::vector<LayerGrads> layers;

  void add(const GradientSet& other);
  void scale(double factor);
  bool all_finite() const;
};

GradientSet zero_gradients(const Network& net);

// Mean squared error between achieved and target output spike rates:
// L = (1/N) sum_i (r_i - rhat_i)^2 with r_i = (1/T) sum_t S_i[t].
double loss_mse_rate(const LayerTrace& output_trace, const TargetRates& target);

// Spatiotemporal backpropagation through the unrolled LIF recurrences.
// Per layer from output to input, per time step from T-1 down to 0:
//
//   dS_i[t] = dL/dr_i * (1/T)                      (output layer)
//           = sum_k w_ki * dI_k[t]                 (hidden layers, next layer's adjoint)
//   dV_i[t] = dS_i[t] * ds_dv(V_i[t], Th_i) + voltage_decay * dV_i[t+1] * gate(i,t)
//   dI_i[t] = dV_i[t] + current_decay * dI_i[t+1]
//   dW_ij   = sum_t dI_i[t] * S_in_j[t]
//   dTh_i   = sum_t dS_i[t] * ds_dth(V_i[t], Th_i)
//
// gate(i,t) = 0 where S_i[t] = 1: the hard reset blocks temporal credit.
GradientSet backward(const Network& net, const std::vector<LayerTrace>& traces,
                     const SpikeTensor& input, const TargetRates& target);

// Gradients of (1/N) sum_i (V_i[T-1] - targetV_i)^2 on the final layer's
// last-step membrane potential. Valid only when no neuron in the network
// spiked: the forward pass is then smooth, so these gradients are checkable
// against finite differences. Throws if any spike occurred.
GradientSet backward_membrane_loss(const Network& net,
                                   const std::vector<LayerTrace>& traces,
                                   const SpikeTensor& input,
                                   const Eigen::VectorXd& target_potentials);

double membrane_loss(const LayerTrace& output_trace,
                     const Eigen::VectorXd& target_potentials);

}  // namespace rouser
