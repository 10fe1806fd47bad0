#pragma once

#include "rouser/bptt.hpp"
#include "rouser/network.hpp"
#include "rouser/optim_state.hpp"

namespace rouser {

AdamState init_adam_state(const Network& net);

// One Adam update: lr_w scales weight deltas, lr_th scales threshold deltas.
// With lr_th = 0 thresholds stay bit-identical. If hp.th_clamp_min is set,
// thresholds are clamped from below after the update.
void adam_step(Network& net, const GradientSet& grads, AdamState& state,
               const Hyperparams& hp);

}  // namespace rouser
