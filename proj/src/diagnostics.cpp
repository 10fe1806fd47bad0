#include "rouser/diagnostics.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rouser/errors.hpp"
#include "rouser/util.hpp"

namespace rouser {

SpikeActivity::SpikeActivity(const std::vector<int>& layer_neuron_counts) {
  spike_counts_.resize(layer_neuron_counts.size());
  step_totals_.assign(layer_neuron_counts.size(), 0);
  for (std::size_t l = 0; l < layer_neuron_counts.size(); ++l)
    spike_counts_[l].assign(std::size_t(layer_neuron_counts[l]), 0);
}

void SpikeActivity::add_sample(const std::vector<LayerTrace>& traces) {
  if (traces.size() != spike_counts_.size())
    throw std::invalid_argument("SpikeActivity: layer count mismatch");
  for (std::size_t l = 0; l < traces.size(); ++l) {
    const SpikeTensor& spikes = traces[l].spikes;
    auto& counts = spike_counts_[l];
    for (int t = 0; t < spikes.steps; ++t) {
      const std::uint8_t* s = spikes.step(t);
      for (int i = 0; i < spikes.neurons; ++i) counts[std::size_t(i)] += s[i];
    }
    step_totals_[l] += std::uint64_t(spikes.steps);
  }
  samples_ += 1;
}

void SpikeActivity::merge(const SpikeActivity& other) {
  if (other.spike_counts_.size() != spike_counts_.size())
    throw std::invalid_argument("SpikeActivity: layer count mismatch");
  for (std::size_t l = 0; l < spike_counts_.size(); ++l) {
    for (std::size_t i = 0; i < spike_counts_[l].size(); ++i)
      spike_counts_[l][i] += other.spike_counts_[l][i];
    step_totals_[l] += other.step_totals_[l];
  }
  samples_ += other.samples_;
}

double SpikeActivity::dead_neuron_pct(int layer) const {
  if (samples_ == 0) throw std::invalid_argument("dead_neuron_pct: empty epoch");
  const auto& counts = spike_counts_.at(std::size_t(layer));
  std::size_t dead = 0;
  for (const auto c : counts) dead += (c == 0);
  return 100.0 * double(dead) / double(counts.size());
}

double SpikeActivity::mean_spike_rate(int layer) const {
  if (samples_ == 0) throw std::invalid_argument("mean_spike_rate: empty epoch");
  const auto& counts = spike_counts_.at(std::size_t(layer));
  std::uint64_t total = 0;
  for (const auto c : counts) total += c;
  return double(total) / (double(counts.size()) * double(step_totals_[layer]));
}

namespace {

SpikeActivity accumulate(const std::vector<std::vector<LayerTrace>>& traces_over_epoch) {
  if (traces_over_epoch.empty())
    throw std::invalid_argument("diagnostics: empty epoch");
  std::vector<int> sizes;
  for (const auto& trace : traces_over_epoch.front())
    sizes.push_back(trace.spikes.neurons);
  SpikeActivity activity(sizes);
  for (const auto& sample : traces_over_epoch) activity.add_sample(sample);
  return activity;
}

}  // namespace

double dead_neuron_pct(const std::vector<std::vector<LayerTrace>>& traces_over_epoch,
                       int layer) {
  return accumulate(traces_over_epoch).dead_neuron_pct(layer);
}

double mean_spike_rate(const std::vector<std::vector<LayerTrace>>& traces_over_epoch,
                       int layer) {
  return accumulate(traces_over_epoch).mean_spike_rate(layer);
}

double weight_drift(const Network& net, const Network& net_init) {
  if (net.layers.size() != net_init.layers.size())
    throw std::invalid_argument("weight_drift: layer count mismatch");
  double total = 0.0;
  std::int64_t count = 0;
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    const auto& a = net.layers[l].weights;
    const auto& b = net_init.layers[l].weights;
    if (a.rows() != b.rows() || a.cols() != b.cols())
      throw std::invalid_argument("weight_drift: shape mismatch");
    total += (a - b).cwiseAbs().sum();
    count += a.size();
  }
  return total / double(count);
}

double mean_threshold(const Network& net, int layer) {
  return net.layers.at(std::size_t(layer)).thresholds.mean();
}

MetricsWriter::MetricsWriter(const std::string& path,
                             const std::vector<std::string>& comments)
    : path_(path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("metrics: cannot write '" + path + "'");
  for (const auto& line : comments) out << "# " << line << '\n';
  out << "epoch,split,loss,accuracy,layer,dead_pct,mean_spike_rate,"
         "mean_threshold,weight_drift,wall_seconds\n";
}

void MetricsWriter::append(const RunMetrics& metrics) {
  std::ofstream out(path_, std::ios::app);
  if (!out) throw DataError("metrics: cannot append to '" + path_ + "'");
  for (std::size_t l = 0; l < metrics.dead_pct.size(); ++l) {
    out << metrics.epoch << ',' << metrics.split << ','
        << format_sig9(metrics.loss) << ',' << format_sig9(metrics.accuracy) << ','
        << (l + 1) << ',' << format_sig9(metrics.dead_pct[l]) << ','
        << format_sig9(metrics.mean_spike_rate[l]) << ','
        << format_sig9(metrics.mean_threshold[l]) << ','
        << format_sig9(metrics.weight_drift) << ','
        << format_sig9(metrics.wall_seconds) << '\n';
  }
}

std::vector<MetricsRow> read_metrics_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("metrics: cannot open '" + path + "'");
  std::vector<MetricsRow> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;  // column header
      continue;
    }
    std::istringstream ss(line);
    std::string field;
    MetricsRow row;
    auto next = [&]() {
      if (!std::getline(ss, field, ','))
        throw DataError("metrics: short row in '" + path + "'");
      return field;
    };
    row.epoch = std::stoi(next());
    row.split = next();
    row.loss = std::stod(next());
    row.accuracy = std::stod(next());
    row.layer = std::stoi(next());
    row.dead_pct = std::stod(next());
    row.mean_spike_rate = std::stod(next());
    row.mean_threshold = std::stod(next());
    row.weight_drift = std::stod(next());
    row.wall_seconds = std::stod(next());
    rows.push_back(row);
  }
  return rows;
}

}  // namespace rouser
