#include "rouser/neuron.hpp"

#include <cmath>
#include <stdexcept>

namespace rouser {

double surrogate_ds_dv(double v, double th, const Hyperparams& hp) {
  return hp.s / hp.tau * std::exp(-std::abs(v - th) / hp.tau);
}

double surrogate_ds_dth(double v, double th, const Hyperparams& hp) {
  return -surrogate_ds_dv(v, th, hp);
}

LayerTrace layer_forward(const LayerParams& params, const SpikeTensor& input,
                         const Hyperparams& hp) {
  const int fan_out = params.fan_out();
  const int fan_in = params.fan_in();
  const int steps = input.steps;
  if (input.neurons != fan_in)
    throw std::invalid_argument("layer_forward: input height does not match fan_in");
  if (steps < 1)
    throw std::invalid_argument("layer_forward: input must span at least one step");

  LayerTrace trace;
  trace.current.resize(fan_out, steps);
  trace.potential.resize(fan_out, steps);
  trace.spikes = SpikeTensor(fan_out, steps);

  Eigen::VectorXd current = Eigen::VectorXd::Zero(fan_out);
  Eigen::VectorXd v_post = Eigen::VectorXd::Constant(fan_out, hp.v_rest);
  Eigen::VectorXd drive(fan_out);

  for (int t = 0; t < steps; ++t) {
    // Inputs are sparse binary spikes; gather weight columns instead of a
    // dense product.
    drive.setZero();
    const std::uint8_t* in_t = input.step(t);
    for (int j = 0; j < fan_in; ++j)
      if (in_t[j]) drive += params.weights.col(j);

    current = hp.current_decay * current + drive;
    Eigen::VectorXd potential = hp.voltage_decay * v_post + current;

    trace.current.col(t) = current;
    trace.potential.col(t) = potential;
    for (int i = 0; i < fan_out; ++i) {
      if (potential[i] >= params.thresholds[i]) {
        trace.spikes.set(i, t);
        v_post[i] = hp.v_rest;
      } else {
        v_post[i] = potential[i];
      }
    }
  }
  return trace;
}

}  // namespace rouser
