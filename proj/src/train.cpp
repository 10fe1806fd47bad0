#include "rouser/train.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <numeric>
#include <utility>

#include "rouser/bptt.hpp"
#include "rouser/errors.hpp"
#include "rouser/optim.hpp"
#include "rouser/util.hpp"

namespace rouser {
namespace {

struct SampleResult {
  double loss = 0.0;
  int correct = 0;
  std::vector<LayerTrace> traces;
  GradientSet grads;  // filled only on training passes
};

int predict_from_traces(const std::vector<LayerTrace>& traces) {
  const SpikeTensor& out = traces.back().spikes;
  std::vector<std::uint64_t> counts(std::size_t(out.neurons), 0);
  for (int t = 0; t < out.steps; ++t)
    for (int i = 0; i < out.neurons; ++i)
      counts[std::size_t(i)] += out.at(i, t);
  return argmax_class(counts);
}

// Forward (and optionally backward) over order[begin, end); results land in
// per-sample slots so the reduction order is fixed no matter how many
// workers ran.
void process_batch(const Network& net, const Dataset& data,
                   const std::vector<std::size_t>& order, std::size_t begin,
                   std::size_t end, bool need_grads,
                   std::vector<SampleResult>& slots) {
  const int outputs = net.spec.layer_sizes.back();
  slots.resize(end - begin);
  parallel_for(end - begin, [&](std::size_t k) {
    const LabeledSample& sample = data.samples[order[begin + k]];
    SampleResult& r = slots[k];
    r.traces = forward(net, sample.input);
    TargetRates target = target_rates_for_label(sample.label, outputs, net.hp);
    r.loss = loss_mse_rate(r.traces.back(), target);
    r.correct = predict_from_traces(r.traces) == sample.label ? 1 : 0;
    if (need_grads)
      r.grads = backward(net, r.traces, sample.input, target);
  });
}

std::vector<int> hidden_and_output_sizes(const Network& net) {
  return {net.spec.layer_sizes.begin() + 1, net.spec.layer_sizes.end()};
}

RunMetrics collect_metrics(int epoch, const char* split, double loss,
                           double accuracy, const SpikeActivity& activity,
                           const Network& net, const Network& init, double wall) {
  RunMetrics m;
  m.epoch = epoch;
  m.split = split;
  m.loss = loss;
  m.accuracy = accuracy;
  m.weight_drift = weight_drift(net, init);
  m.wall_seconds = wall;
  for (int l = 0; l < net.spec.num_layers(); ++l) {
    m.dead_pct.push_back(activity.dead_neuron_pct(l));
    m.mean_spike_rate.push_back(activity.mean_spike_rate(l));
    m.mean_threshold.push_back(mean_threshold(net, l));
  }
  return m;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

void validate_compatible(const Network& net, const Dataset& data,
                         const std::string& name) {
  if (data.samples.empty())
    throw DataError(name + " split is empty");
  if (data.input_size() != net.spec.layer_sizes.front())
    throw DataError(name + " input size " + std::to_string(data.input_size()) +
                    " does not match network input " +
                    std::to_string(net.spec.layer_sizes.front()));
  const int outputs = net.spec.layer_sizes.back();
  for (const LabeledSample& s : data.samples)
    if (s.label < 0 || s.label >= outputs)
      throw DataError(name + " label " + std::to_string(s.label) +
                      " outside network outputs " + std::to_string(outputs));
}

EvalStats evaluate(const Network& net, const Dataset& data) {
  validate_compatible(net, data, "eval");
  EvalStats stats{0.0, 0.0, SpikeActivity(hidden_and_output_sizes(net))};
  std::vector<std::size_t> order(data.samples.size());
  std::iota(order.begin(), order.end(), std::size_t(0));

  const std::size_t chunk = 256;  // bounds trace memory on large splits
  std::vector<SampleResult> slots;
  double loss_sum = 0.0;
  std::uint64_t correct = 0;
  for (std::size_t begin = 0; begin < order.size(); begin += chunk) {
    std::size_t end = std::min(begin + chunk, order.size());
    process_batch(net, data, order, begin, end, /*need_grads=*/false, slots);
    for (const SampleResult& r : slots) {
      loss_sum += r.loss;
      correct += std::uint64_t(r.correct);
      stats.activity.add_sample(r.traces);
    }
  }
  stats.loss = loss_sum / double(data.samples.size());
  stats.accuracy = double(correct) / double(data.samples.size());
  return stats;
}

TrainResult train(const Network& initial, const Dataset& train_data,
                  const Dataset& test_data, const TrainOptions& opts) {
  validate_compatible(initial, train_data, "train");
  validate_compatible(initial, test_data, "test");
  const Hyperparams& hp = initial.hp;
  if (hp.epochs < 1) throw ConfigError("epochs must be >= 1 to train");

  TrainResult result;
  result.net = initial;
  result.opt = init_adam_state(initial);

  std::unique_ptr<MetricsWriter> writer;
  if (!opts.metrics_path.empty())
    writer = std::make_unique<MetricsWriter>(opts.metrics_path, opts.metrics_comments);

  std::ofstream batch_dead_csv;
  if (!opts.batch_dead_csv_path.empty()) {
    batch_dead_csv.open(opts.batch_dead_csv_path, std::ios::trunc);
    if (!batch_dead_csv)
      throw DataError("cannot write '" + opts.batch_dead_csv_path + "'");
    batch_dead_csv << "epoch,batch,layer,dead_pct\n";
  }

  std::vector<std::size_t> order(train_data.samples.size());
  std::vector<SampleResult> slots;
  auto run_start = std::chrono::steady_clock::now();

  for (int epoch = 1; epoch <= hp.epochs; ++epoch) {
    auto train_start = std::chrono::steady_clock::now();
    std::iota(order.begin(), order.end(), std::size_t(0));
    deterministic_shuffle(order, mix_seed(hp.seed, 0x7e19ull, std::uint64_t(epoch)));

    SpikeActivity activity(hidden_and_output_sizes(result.net));
    double loss_sum = 0.0;
    std::uint64_t correct = 0;

    int batch_index = 0;
    for (std::size_t begin = 0; begin < order.size();
         begin += std::size_t(hp.batch_size), ++batch_index) {
      std::size_t end = std::min(begin + std::size_t(hp.batch_size), order.size());
      process_batch(result.net, train_data, order, begin, end,
                    /*need_grads=*/true, slots);

      GradientSet batch_grads = zero_gradients(result.net);
      double batch_loss = 0.0;
      SpikeActivity batch_activity(hidden_and_output_sizes(result.net));
      for (SampleResult& r : slots) {
        loss_sum += r.loss;
        batch_loss += r.loss;
        correct += std::uint64_t(r.correct);
        batch_activity.add_sample(r.traces);
        batch_grads.add(r.grads);
      }
      activity.merge(batch_activity);
      if (batch_dead_csv.is_open())
        for (int l = 0; l < batch_activity.num_layers(); ++l)
          batch_dead_csv << epoch << ',' << batch_index << ',' << l + 1 << ','
                         << format_sig9(batch_activity.dead_neuron_pct(l)) << '\n';
      batch_grads.scale(1.0 / double(end - begin));
      if (!std::isfinite(batch_loss))
        throw NumericError("non-finite loss in epoch " + std::to_string(epoch));
      adam_step(result.net, batch_grads, result.opt, hp);
    }

    double train_wall = opts.timing ? seconds_since(train_start) : 0.0;
    RunMetrics train_metrics = collect_metrics(
        epoch, "train", loss_sum / double(train_data.samples.size()),
        double(correct) / double(train_data.samples.size()), activity,
        result.net, initial, train_wall);

    auto test_start = std::chrono::steady_clock::now();
    EvalStats test_stats = evaluate(result.net, test_data);
    double test_wall = opts.timing ? seconds_since(test_start) : 0.0;
    RunMetrics test_metrics =
        collect_metrics(epoch, "test", test_stats.loss, test_stats.accuracy,
                        test_stats.activity, result.net, initial, test_wall);

    if (writer) {
      writer->append(train_metrics);
      writer->append(test_metrics);
    }
    result.history.push_back({train_metrics, test_metrics});

    if (result.best_epoch == 0 || test_stats.accuracy > result.best_test_accuracy) {
      result.best_epoch = epoch;
      result.best_test_accuracy = test_stats.accuracy;
      if (!opts.best_checkpoint_path.empty())
        save_checkpoint(result.net, opts.best_checkpoint_path);
    }
    if (opts.log)
      *opts.log << "epoch " << epoch << "/" << hp.epochs << "  train loss "
                << format_sig9(train_metrics.loss) << "  train acc "
                << format_sig9(train_metrics.accuracy) << "  test acc "
                << format_sig9(test_stats.accuracy) << "\n";
    if (opts.on_epoch) opts.on_epoch(epoch, result.net);

    if (opts.patience > 0 && epoch - result.best_epoch >= opts.patience) {
      if (opts.log)
        *opts.log << "stopping: no test-accuracy improvement in "
                  << opts.patience << " epochs\n";
      break;
    }
    if (opts.max_seconds > 0.0 && seconds_since(run_start) > opts.max_seconds) {
      if (opts.log)
        *opts.log << "stopping: wall-time budget exceeded\n";
      break;
    }
  }

  if (!opts.last_checkpoint_path.empty())
    save_checkpoint(result.net, opts.last_checkpoint_path,
                    opts.save_opt_state ? &result.opt : nullptr);
  return result;
}

}  // namespace rouser
