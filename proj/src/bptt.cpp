#include "rouser/bptt.hpp"

#include <cmath>
#include <stdexcept>

#include "rouser/errors.hpp"

namespace rouser {

TargetRates target_rates_for_label(int label, int num_outputs, const Hyperparams& hp) {
  if (label < 0 || label >= num_outputs)
    throw std::invalid_argument("target_rates_for_label: label out of range");
  TargetRates target = Eigen::VectorXd::Constant(num_outputs, hp.false_rate);
  target[label] = hp.true_rate;
  return target;
}

void GradientSet::add(const GradientSet& other) {
  for (std::size_t l = 0; l < layers.size(); ++l) {
    layers[l].d_weights += other.layers[l].d_weights;
    layers[l].d_thresholds += other.layers[l].d_thresholds;
  }
}

void GradientSet::scale(double factor) {
  for (auto& layer : layers) {
    layer.d_weights *= factor;
    layer.d_thresholds *= factor;
  }
}

bool GradientSet::all_finite() const {
  for (const auto& layer : layers)
    if (!layer.d_weights.allFinite() || !layer.d_thresholds.allFinite())
      return false;
  return true;
}

GradientSet zero_gradients(const Network& net) {
  GradientSet grads;
  grads.layers.resize(net.layers.size());
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    grads.layers[l].d_weights =
        Eigen::MatrixXd::Zero(net.layers[l].weights.rows(), net.layers[l].weights.cols());
    grads.layers[l].d_thresholds = Eigen::VectorXd::Zero(net.layers[l].thresholds.size());
  }
  return grads;
}

namespace {

Eigen::VectorXd spike_rates(const SpikeTensor& spikes) {
  Eigen::VectorXd rates = Eigen::VectorXd::Zero(spikes.neurons);
  for (int t = 0; t < spikes.steps; ++t) {
    const std::uint8_t* s = spikes.step(t);
    for (int i = 0; i < spikes.neurons; ++i) rates[i] += s[i];
  }
  return rates / double(spikes.steps);
}

// Runs the adjoint recursion for one layer given dS over all steps, filling
// that layer's gradients and (unless skipped) the loss signal for the layer
// below. delta_spikes is (fan_out x T).
void layer_backward(const LayerParams& params, const LayerTrace& trace,
                    const SpikeTensor& layer_input, const Hyperparams& hp,
                    const Eigen::MatrixXd& delta_spikes,
                    GradientSet::LayerGrads& grads,
                    Eigen::MatrixXd* delta_input_spikes) {
  const int fan_out = params.fan_out();
  const int steps = trace.spikes.steps;
  const double surr_scale = hp.s / hp.tau;

  Eigen::VectorXd delta_v = Eigen::VectorXd::Zero(fan_out);
  Eigen::VectorXd delta_i = Eigen::VectorXd::Zero(fan_out);
  Eigen::MatrixXd delta_i_all(fan_out, steps);

  for (int t = steps - 1; t >= 0; --t) {
    const std::uint8_t* spiked = trace.spikes.step(t);
    for (int i = 0; i < fan_out; ++i) {
      const double surr =
          surr_scale *
          std::exp(-std::abs(trace.potential(i, t) - params.thresholds[i]) / hp.tau);
      const double gated = spiked[i] ? 0.0 : delta_v[i];
      delta_v[i] = delta_spikes(i, t) * surr + hp.voltage_decay * gated;
      delta_i[i] = delta_v[i] + hp.current_decay * delta_i[i];
      // dTh accumulates dS * (-surr), Eq-3 style negation of the dV surrogate.
      grads.d_thresholds[i] -= delta_spikes(i, t) * surr;
    }
    delta_i_all.col(t) = delta_i;
    const std::uint8_t* in_t = layer_input.step(t);
    for (int j = 0; j < layer_input.neurons; ++j)
      if (in_t[j]) grads.d_weights.col(j) += delta_i;
  }

  if (delta_input_spikes) {
    delta_input_spikes->resize(layer_input.neurons, steps);
    for (int t = 0; t < steps; ++t)
      delta_input_spikes->col(t) =
          params.weights.transpose() * delta_i_all.col(t);
  }
}

void check_backward_args(const Network& net, const std::vector<LayerTrace>& traces,
                         const SpikeTensor& input) {
  if (traces.size() != net.layers.size())
    throw std::invalid_argument("backward: one trace per layer expected");
  if (input.neurons != net.spec.layer_sizes.front())
    throw std::invalid_argument("backward: input size does not match network spec");
  for (std::size_t l = 0; l < traces.size(); ++l)
    if (traces[l].spikes.neurons != net.layers[l].fan_out() ||
        traces[l].spikes.steps != input.steps)
      throw std::invalid_argument("backward: trace shape mismatch at layer " +
                                  std::to_string(l));
}

}  // namespace

double loss_mse_rate(const LayerTrace& output_trace, const TargetRates& target) {
  const Eigen::VectorXd rates = spike_rates(output_trace.spikes);
  if (rates.size() != target.size())
    throw std::invalid_argument("loss_mse_rate: target size mismatch");
  return (rates - target).squaredNorm() / double(rates.size());
}

GradientSet backward(const Network& net, const std::vector<LayerTrace>& traces,
                     const SpikeTensor& input, const TargetRates& target) {
  check_backward_args(net, traces, input);
  const int steps = input.steps;
  const int num_layers = int(net.layers.size());
  const SpikeTensor& output = traces.back().spikes;
  if (target.size() != output.neurons)
    throw std::invalid_argument("backward: target size mismatch");

  GradientSet grads = zero_gradients(net);

  // dL/dS at the output layer: dL/dr_i * (1/T), constant over t.
  const Eigen::VectorXd rates = spike_rates(output);
  const Eigen::VectorXd dl_dr =
      2.0 / double(output.neurons) * (rates - target);
  Eigen::MatrixXd delta_spikes =
      (dl_dr / double(steps)).replicate(1, steps);

  for (int l = num_layers - 1; l >= 0; --l) {
    const SpikeTensor& layer_input = l == 0 ? input : traces[l - 1].spikes;
    Eigen::MatrixXd delta_below;
    // Credit below layer 0 would land on the raw input; skip computing it.
    layer_backward(net.layers[l], traces[l], layer_input, net.hp, delta_spikes,
                   grads.layers[l], l > 0 ? &delta_below : nullptr);
    delta_spikes = std::move(delta_below);
  }

  if (!grads.all_finite())
    throw NumericError("backward: non-finite gradient");
  return grads;
}

double membrane_loss(const LayerTrace& output_trace,
                     const Eigen::VectorXd& target_potentials) {
  const int last = output_trace.spikes.steps - 1;
  const Eigen::VectorXd v = output_trace.potential.col(last);
  if (v.size() != target_potentials.size())
    throw std::invalid_argument("membrane_loss: target size mismatch");
  return (v - target_potentials).squaredNorm() / double(v.size());
}

GradientSet backward_membrane_loss(const Network& net,
                                   const std::vector<LayerTrace>& traces,
                                   const SpikeTensor& input,
                                   const Eigen::VectorXd& target_potentials) {
  check_backward_args(net, traces, input);
  for (const LayerTrace& trace : traces)
    if (trace.spikes.count() != 0)
      throw std::invalid_argument(
          "backward_membrane_loss: a spike occurred; membrane loss requires a "
          "sub-threshold network");

  const int steps = input.steps;
  const int num_layers = int(net.layers.size());
  const int num_outputs = net.layers.back().fan_out();
  if (target_potentials.size() != num_outputs)
    throw std::invalid_argument("backward_membrane_loss: target size mismatch");

  GradientSet grads = zero_gradients(net);

  // In the sub-threshold regime the spike function is exactly flat, so no
  // credit crosses a spike output: only the final layer's parameters see a
  // gradient, through the smooth I/V recurrences. Everything upstream is
  // exactly zero, as finite differences confirm.
  const int l = num_layers - 1;
  const LayerTrace& trace = traces[l];
  const SpikeTensor& layer_input = l == 0 ? input : traces[l - 1].spikes;

  Eigen::VectorXd delta_v =
      2.0 / double(num_outputs) *
      (trace.potential.col(steps - 1) - target_potentials);
  Eigen::VectorXd delta_i = delta_v;
  for (int t = steps - 1; t >= 0; --t) {
    if (t < steps - 1) {
      delta_v *= net.hp.voltage_decay;
      delta_i = delta_v + net.hp.current_decay * delta_i;
    }
    const std::uint8_t* in_t = layer_input.step(t);
    for (int j = 0; j < layer_input.neurons; ++j)
      if (in_t[j]) grads.layers[l].d_weights.col(j) += delta_i;
  }
  return grads;
}

}  // namespace rouser
