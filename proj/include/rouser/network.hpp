#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rouser/neuron.hpp"
#include "rouser/optim_state.hpp"

namespace rouser {

// Layer sizes from input to output, e.g. {2312, 500, 500, 10}.
struct NetworkSpec {
  std::vector<int> layer_sizes;

  int num_layers() const { return int(layer_sizes.size()) - 1; }
  // Trainable parameter count: weights plus per-neuron thresholds.
  std::int64_t param_count() const;

  bool operator==(const NetworkSpec&) const = default;
};

// Parses architecture strings like "34x34x2-500-500-10"; 'x'-separated
// dimensions multiply into one layer size.
NetworkSpec parse_network_spec(const std::string& text);
std::string to_string(const NetworkSpec& spec);

struct Network {
  std::vector<LayerParams> layers;
  NetworkSpec spec;
  Hyperparams hp;
};

// Kaiming-initialized network: weights ~ N(0, 2 / fan_in), every threshold
// set to hp.th_init. Deterministic given seed.
Network init_network(const NetworkSpec& spec, const Hyperparams& hp,
                     std::uint64_t seed);

// Full forward pass; trace l is layer_forward of layer l applied to the
// spikes of trace l-1 (the raw input for l = 0).
std::vector<LayerTrace> forward(const Network& net, const SpikeTensor& input);

// Index of the output neuron with the highest total spike count; ties break
// to the lowest index.
int predict(const Network& net, const SpikeTensor& input);

// Argmax with lowest-index tie-break over raw spike counts.
int argmax_class(const std::vector<std::uint64_t>& counts);

// FNV-1a fingerprint over all weight bytes, layer by layer.
std::uint64_t weight_fingerprint(const Network& net);

// Checkpoint container (magic "RSNN", version 1): layer shapes and payload,
// the hyperparameters in the config grammar, and optionally the Adam state
// for exact training resumption.
void save_checkpoint(const Network& net, const std::string& path,
                     const AdamState* opt_state = nullptr);

struct Checkpoint {
  Network net;
  bool has_opt_state = false;
  AdamState opt_state;
};

Checkpoint load_checkpoint(const std::string& path);

}  // namespace rouser
