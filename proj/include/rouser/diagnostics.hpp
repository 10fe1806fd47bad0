#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "rouser/network.hpp"

namespace rouser {

// Per-layer spike statistics accumulated sample by sample over an epoch.
// Pure observer: merging traces never touches training state.
class SpikeActivity {
 public:
  explicit SpikeActivity(const std::vector<int>& layer_neuron_counts);

  void add_sample(const std::vector<LayerTrace>& traces);
  // Merge partial counts; used to reduce per-sample observations in a fixed
  // order.
  void merge(const SpikeActivity& other);

  int num_layers() const { return int(spike_counts_.size()); }
  std::uint64_t samples() const { return samples_; }

  // 100 * (neurons silent across every sample and step) / layer size.
  double dead_neuron_pct(int layer) const;
  // Spikes per neuron per time step, averaged over the epoch.
  double mean_spike_rate(int layer) const;

 private:
  std::vector<std::vector<std::uint64_t>> spike_counts_;  // [layer][neuron]
  std::vector<std::uint64_t> step_totals_;                // [layer], samples * T
  std::uint64_t samples_ = 0;
};

// Convenience over a whole epoch of per-sample traces.
double dead_neuron_pct(const std::vector<std::vector<LayerTrace>>& traces_over_epoch,
                       int layer);
double mean_spike_rate(const std::vector<std::vector<LayerTrace>>& traces_over_epoch,
                       int layer);

// Mean absolute elementwise weight difference across all layers.
double weight_drift(const Network& net, const Network& net_init);

double mean_threshold(const Network& net, int layer);

// One metrics record per (epoch, split).
struct RunMetrics {
  int epoch = 0;
  std::string split;  // "train" or "test"
  double loss = 0.0;
  double accuracy = 0.0;
  std::vector<double> dead_pct;          // per layer
  std::vector<double> mean_spike_rate;   // per layer
  std::vector<double> mean_threshold;    // per layer
  double weight_drift = 0.0;
  double wall_seconds = 0.0;
};

// Streams RunMetrics rows as CSV, one row per (epoch, split, layer), floats
// with 9 significant digits. Header comment lines carry the resolved run
// configuration so the run can be reproduced exactly.
class MetricsWriter {
 public:
  MetricsWriter(const std::string& path, const std::vector<std::string>& comments);

  void append(const RunMetrics& metrics);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Parses rows back out of a metrics CSV (acceptance checks and the sweep /
// ablate summaries use this).
struct MetricsRow {
  int epoch;
  std::string split;
  double loss;
  double accuracy;
  int layer;
  double dead_pct;
  double mean_spike_rate;
  double mean_threshold;
  double weight_drift;
  double wall_seconds;
};

std::vector<MetricsRow> read_metrics_csv(const std::string& path);

}  // namespace rouser
