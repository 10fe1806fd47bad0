#pragma once

#include <optional>
#include <string>
#include <vector>

namespace rouser {

// Training hyperparameters and run-control settings. Defaults reproduce the
// reference operating point; immutable after load and safe to share across
// threads.
struct Hyperparams {
  double th_init = 1.25;        // initial spiking threshold for all neurons
  double s = 1.5;               // surrogate scaling factor
  double tau = 3.75;            // surrogate steepness parameter
  double lr_w = 0.001;          // weight learning rate
  double lr_th = 0.001;         // threshold learning rate; 0 freezes thresholds
  double current_decay = 0.75;  // alpha, synaptic current leak per step
  double voltage_decay = 0.97;  // beta, membrane potential leak per step
  double v_rest = 0.0;          // reset / resting potential
  double true_rate = 0.2;       // target output spike rate, correct class
  double false_rate = 0.03;     // target output spike rate, other classes
  int time_steps = 300;         // T, simulation steps per sample
  int batch_size = 32;
  int epochs = 50;
  int seed = 1;
  int bin_width_us = 1000;      // event-to-raster bin width in microseconds
  std::optional<double> th_clamp_min;  // lower clamp on learned thresholds

  bool operator==(const Hyperparams&) const = default;
};

// Throws ConfigError naming the offending key if any invariant is violated.
void validate(const Hyperparams& hp);

// Parses the flat `key = value` config grammar. Omitted keys keep their
// defaults; the result is validated.
Hyperparams load_config(const std::string& path);

// Parses config text directly (same grammar as load_config).
Hyperparams parse_config(const std::string& text);

// Applies `key=value` override strings (CLI --set flags) on top of hp and
// re-validates.
Hyperparams apply_overrides(Hyperparams hp, const std::vector<std::string>& sets);

// Serializes hp in the config grammar; parse_config(serialize_config(hp)) == hp.
std::string serialize_config(const Hyperparams& hp);

void save_config(const Hyperparams& hp, const std::string& path);

}  // namespace rouser
