#pragma once

#include <Eigen/Core>

#include "rouser/config.hpp"
#include "rouser/events.hpp"

namespace rouser {

// Trainable state of one fully connected LIF layer: a weight matrix and a
// per-neuron spiking threshold vector.
struct LayerParams {
  Eigen::MatrixXd weights;     // (fan_out x fan_in), row i = neuron i's synapses
  Eigen::VectorXd thresholds;  // (fan_out)

  int fan_out() const { return int(weights.rows()); }
  int fan_in() const { return int(weights.cols()); }
};

// Per-timestep record of one layer's forward pass. `potential` holds the
// membrane potential before reset, which is what the surrogate derivatives
// are evaluated at.
struct LayerTrace {
  Eigen::MatrixXd current;    // I, (fan_out x T)
  Eigen::MatrixXd potential;  // V before reset, (fan_out x T)
  SpikeTensor spikes;         // S, (fan_out x T)
};

// Surrogate derivative of the spike step function with respect to the
// membrane potential: (s / tau) * exp(-|V - Th| / tau). Strictly positive,
// maximal at V = Th.
double surrogate_ds_dv(double v, double th, const Hyperparams& hp);

// Surrogate derivative with respect to the threshold: the negation of
// surrogate_ds_dv.
double surrogate_ds_dth(double v, double th, const Hyperparams& hp);

// Discrete-time CUBA-LIF forward pass over all T steps of `input`:
//
//   I[t]      = current_decay * I[t-1] + W * S_in[t]         (I[-1] = 0)
//   V[t]      = voltage_decay * V_post[t-1] + I[t]           (V_post[-1] = v_rest)
//   S[t]      = 1  iff  V[t] >= Th
//   V_post[t] = v_rest where S[t] = 1, else V[t]
//
// Hard reset to v_rest; spike condition uses >=.
LayerTrace layer_forward(const LayerParams& params, const SpikeTensor& input,
                         const Hyperparams& hp);

}  // namespace rouser
