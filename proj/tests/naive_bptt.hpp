#pragma once

// Reference BPTT written as plain nested scalar loops over the documented
// recurrences. Deliberately shares no code with the production forward or
// backward passes beyond reading parameters coefficient by coefficient, so
// the two implementations can serve as oracles for each other.

#include <cmath>
#include <cstddef>
#include <vector>

#include "rouser/events.hpp"
#include "rouser/network.hpp"

namespace naive {

// [layer][neuron][t]
using Field = std::vector<std::vector<std::vector<double>>>;
using SpikeField = std::vector<std::vector<std::vector<int>>>;

struct Forward {
  Field current;
  Field potential;  // pre-reset, as the spike decision sees it
  SpikeField spikes;
};

inline Forward forward(const rouser::Network& net, const rouser::SpikeTensor& input) {
  const rouser::Hyperparams& hp = net.hp;
  const int T = input.steps;
  const int L = net.spec.num_layers();

  Forward f;
  f.current.resize(L);
  f.potential.resize(L);
  f.spikes.resize(L);

  std::vector<std::vector<int>> prev(input.neurons, std::vector<int>(T, 0));
  for (int j = 0; j < input.neurons; ++j)
    for (int t = 0; t < T; ++t) prev[j][t] = input.at(j, t) ? 1 : 0;

  for (int l = 0; l < L; ++l) {
    const int n_out = net.spec.layer_sizes[std::size_t(l) + 1];
    const int n_in = net.spec.layer_sizes[std::size_t(l)];
    f.current[l].assign(n_out, std::vector<double>(T, 0.0));
    f.potential[l].assign(n_out, std::vector<double>(T, 0.0));
    f.spikes[l].assign(n_out, std::vector<int>(T, 0));

    for (int i = 0; i < n_out; ++i) {
      double cur = 0.0;
      double v_post = hp.v_rest;
      for (int t = 0; t < T; ++t) {
        double drive = 0.0;
        for (int j = 0; j < n_in; ++j)
          drive += net.layers[std::size_t(l)].weights(i, j) * prev[j][t];
        cur = hp.current_decay * cur + drive;
        const double v = hp.voltage_decay * v_post + cur;
        const int s = v >= net.layers[std::size_t(l)].thresholds(i) ? 1 : 0;
        f.current[l][i][t] = cur;
        f.potential[l][i][t] = v;
        f.spikes[l][i][t] = s;
        v_post = s ? hp.v_rest : v;
      }
    }

    prev = f.spikes[l];
  }
  return f;
}

struct Grads {
  Field d_weights;                        // [layer][out][in]
  std::vector<std::vector<double>> d_th;  // [layer][out]
};

// Reverse-mode pass over the arrays produced by naive::forward, one adjoint
// variable per stored quantity, processed strictly in reverse time order.
inline Grads backward(const rouser::Network& net, const rouser::SpikeTensor& input,
                      const std::vector<double>& target_rates) {
  const rouser::Hyperparams& hp = net.hp;
  const int T = input.steps;
  const int L = net.spec.num_layers();
  const Forward f = naive::forward(net, input);

  Grads g;
  g.d_weights.resize(L);
  g.d_th.resize(L);

  // Loss adjoint: L = (1/N) sum_i (r_i - rhat_i)^2, r_i = (1/T) sum_t S_i[t].
  const int n_last = net.spec.layer_sizes.back();
  std::vector<std::vector<double>> d_spike(n_last, std::vector<double>(T, 0.0));
  for (int i = 0; i < n_last; ++i) {
    double rate = 0.0;
    for (int t = 0; t < T; ++t) rate += f.spikes[std::size_t(L) - 1][i][t];
    rate /= T;
    const double dl_drate = 2.0 / n_last * (rate - target_rates[std::size_t(i)]);
    for (int t = 0; t < T; ++t) d_spike[i][t] = dl_drate / T;
  }

  for (int l = L - 1; l >= 0; --l) {
    const int n_out = net.spec.layer_sizes[std::size_t(l) + 1];
    const int n_in = net.spec.layer_sizes[std::size_t(l)];
    std::vector<std::vector<double>> d_current(n_out, std::vector<double>(T, 0.0));
    g.d_weights[l].assign(n_out, std::vector<double>(n_in, 0.0));
    g.d_th[l].assign(n_out, 0.0);

    for (int i = 0; i < n_out; ++i) {
      const double th = net.layers[std::size_t(l)].thresholds(i);
      double d_v_next = 0.0;
      double d_i_next = 0.0;
      for (int t = T - 1; t >= 0; --t) {
        const double v = f.potential[l][i][t];
        const double slope = hp.s / hp.tau * std::exp(-std::fabs(v - th) / hp.tau);
        // V[t+1] = voltage_decay * V_post[t] + I[t+1]; V_post[t] is v_rest
        // (constant) where the neuron spiked, so no credit flows there.
        double d_v = d_spike[i][t] * slope;
        if (f.spikes[l][i][t] == 0) d_v += hp.voltage_decay * d_v_next;
        const double d_i = d_v + hp.current_decay * d_i_next;
        d_current[i][t] = d_i;
        g.d_th[l][i] += d_spike[i][t] * -slope;
        d_v_next = d_v;
        d_i_next = d_i;
      }
    }

    for (int i = 0; i < n_out; ++i)
      for (int j = 0; j < n_in; ++j) {
        double acc = 0.0;
        for (int t = 0; t < T; ++t) {
          const int in_spike = l == 0 ? (input.at(j, t) ? 1 : 0) : f.spikes[l - 1][j][t];
          acc += d_current[i][t] * in_spike;
        }
        g.d_weights[l][i][j] = acc;
      }

    if (l > 0) {
      std::vector<std::vector<double>> up(n_in, std::vector<double>(T, 0.0));
      for (int j = 0; j < n_in; ++j)
        for (int t = 0; t < T; ++t) {
          double acc = 0.0;
          for (int i = 0; i < n_out; ++i)
            acc += net.layers[std::size_t(l)].weights(i, j) * d_current[i][t];
          up[j][t] = acc;
        }
      d_spike = up;
    }
  }
  return g;
}

// |a - b| / max(|a|, |b|), zero when both are negligibly small.
inline double rel_err(double a, double b) {
  const double mag = std::fmax(std::fabs(a), std::fabs(b));
  if (mag < 1e-12) return 0.0;
  return std::fabs(a - b) / mag;
}

}  // namespace naive
