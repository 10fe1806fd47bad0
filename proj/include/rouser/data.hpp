#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rouser/config.hpp"
#include "rouser/events.hpp"

namespace rouser {

struct Dataset {
  std::vector<LabeledSample> samples;
  int num_classes = 0;

  int input_size() const {
    return samples.empty() ? 0 : samples.front().input.neurons;
  }
};

// Synthetic task shape; train and test samples are disjoint draws from the
// same class templates.
struct SyntheticSpec {
  int classes = 2;
  int neurons = 20;
  int train_per_class = 100;
  int test_per_class = 40;
  double jitter = 0.1;
};

std::pair<Dataset, Dataset> make_synthetic_splits(const SyntheticSpec& spec,
                                                  const Hyperparams& hp);

// Loads one split directory. Accepts neutral-format files (*.revt, label
// embedded) directly in the directory or under label subdirectories, and
// NMNIST binary files (*.bin) under numeric label subdirectories. Files are
// rasterized with hp.time_steps and hp.bin_width_us.
Dataset load_split_dir(const std::string& dir, const Hyperparams& hp);

// Loads <root>/train and <root>/test (or Train/Test).
std::pair<Dataset, Dataset> load_data_dir(const std::string& root,
                                          const Hyperparams& hp);

}  // namespace rouser
