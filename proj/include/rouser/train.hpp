#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "rouser/data.hpp"
#include "rouser/diagnostics.hpp"
#include "rouser/network.hpp"
#include "rouser/optim_state.hpp"

namespace rouser {

struct TrainOptions {
  std::string metrics_path;                  // empty: no CSV written
  std::vector<std::string> metrics_comments;
  std::string best_checkpoint_path;          // empty: skip
  std::string last_checkpoint_path;          // empty: skip
  // Per-batch dead-neuron percentages (epoch,batch,layer,dead_pct rows);
  // finer-grained than the per-epoch metrics, off unless a path is given.
  std::string batch_dead_csv_path;
  bool save_opt_state = false;
  // wall_seconds is 0 unless enabled, so repeated runs emit byte-identical
  // metrics files.
  bool timing = false;
  // Stop after this many epochs without a test-accuracy improvement; 0
  // disables. Off by default so runs keep the configured epoch count.
  int patience = 0;
  // Stop at the first epoch boundary past this wall-time budget; 0 disables.
  double max_seconds = 0.0;
  std::ostream* log = nullptr;               // per-epoch progress lines
  // Runs after each epoch's updates and evaluation; lets callers watch the
  // parameter trajectory directly.
  std::function<void(int epoch, const Network& net)> on_epoch;
};

struct EpochStats {
  RunMetrics train;
  RunMetrics test;
};

struct TrainResult {
  Network net;
  AdamState opt;
  std::vector<EpochStats> history;
  int best_epoch = 0;  // 1-based epoch with the highest test accuracy
  double best_test_accuracy = 0.0;
};

// Mini-batch gradient descent with Adam. Deterministic for a fixed seed:
// the per-epoch shuffle is seeded from hp.seed and the epoch number, and
// per-sample gradients are reduced in sample order regardless of worker
// count. Throws NumericError if the loss or any gradient goes non-finite.
TrainResult train(const Network& initial, const Dataset& train_data,
                  const Dataset& test_data, const TrainOptions& opts);

struct EvalStats {
  double loss = 0.0;
  double accuracy = 0.0;
  SpikeActivity activity;
};

EvalStats evaluate(const Network& net, const Dataset& data);

// Throws DataError if the dataset is empty, its input size does not match
// the network's input layer, or any label falls outside the output layer.
void validate_compatible(const Network& net, const Dataset& data,
                         const std::string& name);

}  // namespace rouser
