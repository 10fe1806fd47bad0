// rouser: spiking-network training with learnable firing thresholds.
//
// Subcommands: train, eval, sweep-th, ablate, gen-synthetic, convert-nmnist,
// inspect. Exit codes: 0 success, 2 data error, 3 config error, 4 numeric
// failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "rouser/bptt.hpp"
#include "rouser/config.hpp"
#include "rouser/data.hpp"
#include "rouser/diagnostics.hpp"
#include "rouser/errors.hpp"
#include "rouser/events.hpp"
#include "rouser/network.hpp"
#include "rouser/train.hpp"
#include "rouser/util.hpp"

namespace fs = std::filesystem;
using namespace rouser;

namespace {

struct ConfigFlags {
  std::string path;
  std::vector<std::string> sets;
  int seed = 1;
  CLI::Option* seed_opt = nullptr;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& c) {
  cmd->add_option("--config", c.path, "Config file, one `key = value` per line")
      ->check(CLI::ExistingFile);
  cmd->add_option("--set", c.sets,
                  "Override a config key, e.g. --set lr_th=0 (repeatable)");
  c.seed_opt = cmd->add_option("--seed", c.seed, "Override the run seed");
}

Hyperparams resolve_config(const ConfigFlags& c) {
  Hyperparams hp = c.path.empty() ? Hyperparams{} : load_config(c.path);
  hp = apply_overrides(hp, c.sets);
  if (c.seed_opt != nullptr && c.seed_opt->count() > 0) hp.seed = c.seed;
  validate(hp);
  return hp;
}

struct DataOptions {
  std::string data_dir;
  bool synthetic = false;
  int classes = 2;
  int train_per_class = 100;
  int test_per_class = 40;
  double jitter = 0.1;
};

void add_data_flags(CLI::App* cmd, DataOptions& d) {
  cmd->add_option("--data-dir", d.data_dir,
                  "Dataset root containing train/ and test/ splits");
  cmd->add_flag("--synthetic", d.synthetic,
                "Use the built-in synthetic task instead of a dataset on disk");
  cmd->add_option("--classes", d.classes, "Synthetic: number of classes");
  cmd->add_option("--train-per-class", d.train_per_class,
                  "Synthetic: training samples per class");
  cmd->add_option("--test-per-class", d.test_per_class,
                  "Synthetic: test samples per class");
  cmd->add_option("--jitter", d.jitter,
                  "Synthetic: fraction of each sample's cues dropped; timing noise scales with it");
}

std::pair<Dataset, Dataset> load_splits(const DataOptions& d, int input_size,
                                        const Hyperparams& hp) {
  if (d.synthetic && !d.data_dir.empty())
    throw ConfigError("choose one of --synthetic or --data-dir");
  if (!d.synthetic && d.data_dir.empty())
    throw ConfigError("either --synthetic or --data-dir is required");
  if (d.synthetic) {
    SyntheticSpec spec{d.classes, input_size, d.train_per_class,
                       d.test_per_class, d.jitter};
    return make_synthetic_splits(spec, hp);
  }
  return load_data_dir(d.data_dir, hp);
}

std::string data_description(const DataOptions& d) {
  if (d.synthetic) {
    std::ostringstream out;
    out << "synthetic classes=" << d.classes
        << " train_per_class=" << d.train_per_class
        << " test_per_class=" << d.test_per_class
        << " jitter=" << format_sig9(d.jitter);
    return out.str();
  }
  return "dir " + d.data_dir;
}

// Comment block at the top of every metrics CSV; enough to reproduce the run.
std::vector<std::string> run_comments(const Hyperparams& hp, const NetworkSpec& spec,
                                      const std::string& data_desc,
                                      std::uint64_t init_hash) {
  std::vector<std::string> lines;
  lines.push_back("rouser run");
  lines.push_back("arch = " + to_string(spec));
  lines.push_back("data = " + data_desc);
  lines.push_back("init_weight_hash = " + format_hex16(init_hash));
  lines.push_back("config:");
  std::istringstream cfg(serialize_config(hp));
  for (std::string line; std::getline(cfg, line);)
    lines.push_back("  " + line);
  return lines;
}

// Reads `# key = value` back out of a metrics CSV header.
std::optional<std::string> read_comment_value(const std::string& path,
                                              const std::string& key) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read '" + path + "'");
  const std::string want = "# " + key + " = ";
  for (std::string line; std::getline(in, line);) {
    if (line.rfind(want, 0) == 0) return line.substr(want.size());
    if (!line.empty() && line[0] != '#') break;
  }
  return std::nullopt;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      double v = std::stod(item, &used);
      while (used < item.size() && std::isspace((unsigned char)item[used])) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError(std::string(what) + ": cannot parse '" + item + "' as a number");
    }
  }
  if (out.empty())
    throw ConfigError(std::string(what) + ": empty list");
  return out;
}

// One training run rooted at dir; returns the full history.
TrainResult run_one(const Network& net, const Dataset& train_data,
                    const Dataset& test_data, const fs::path& dir,
                    const std::vector<std::string>& comments, bool timing,
                    bool save_opt_state, int patience, double max_seconds,
                    std::ostream* log, bool batch_dead = false) {
  fs::create_directories(dir);
  save_config(net.hp, (dir / "config.txt").string());
  TrainOptions opts;
  opts.metrics_path = (dir / "metrics.csv").string();
  opts.metrics_comments = comments;
  opts.best_checkpoint_path = (dir / "best.ckpt").string();
  opts.last_checkpoint_path = (dir / "last.ckpt").string();
  if (batch_dead) opts.batch_dead_csv_path = (dir / "batch_dead.csv").string();
  opts.save_opt_state = save_opt_state;
  opts.timing = timing;
  opts.patience = patience;
  opts.max_seconds = max_seconds;
  opts.log = log;
  return train(net, train_data, test_data, opts);
}

void print_layer_stats(const SpikeActivity& activity, const Network& net) {
  for (int l = 0; l < activity.num_layers(); ++l)
    std::cout << "layer " << l + 1 << "  dead_pct " << format_sig9(activity.dead_neuron_pct(l))
              << "  mean_spike_rate " << format_sig9(activity.mean_spike_rate(l))
              << "  mean_threshold " << format_sig9(mean_threshold(net, l)) << "\n";
}

int run_cli(int argc, char** argv) {
  CLI::App app{"rouser: surrogate-gradient SNN training with learnable thresholds"};
  app.require_subcommand(1);

  // train ------------------------------------------------------------------
  auto* train_cmd = app.add_subcommand("train", "Train a network and record metrics");
  ConfigFlags train_cfg;
  DataOptions train_data_flags;
  std::string train_arch = "20-16-2";
  std::string train_out = "runs";
  std::string train_name = "run";
  bool train_timing = false, train_save_opt = false, train_quiet = false;
  bool train_batch_dead = false;
  int train_patience = 0;
  double train_max_seconds = 0.0, train_reach = 0.0;
  add_config_flags(train_cmd, train_cfg);
  add_data_flags(train_cmd, train_data_flags);
  train_cmd->add_option("--arch", train_arch, "Layer sizes, e.g. 34x34x2-64-10");
  train_cmd->add_option("--out-dir", train_out, "Output root directory");
  train_cmd->add_option("--run-name", train_name, "Subdirectory for this run");
  train_cmd->add_flag("--timing", train_timing,
                      "Record real wall_seconds in metrics (off keeps outputs byte-stable)");
  train_cmd->add_flag("--save-opt-state", train_save_opt,
                      "Store the optimizer state in last.ckpt");
  train_cmd->add_option("--patience", train_patience,
                        "Stop after N epochs without test-accuracy improvement (0 = off)");
  train_cmd->add_option("--max-seconds", train_max_seconds,
                        "Stop at the first epoch boundary past this wall-time budget (0 = off)");
  train_cmd->add_option("--reach", train_reach,
                        "Report the first epoch reaching this test accuracy in percent");
  train_cmd->add_flag("--quiet", train_quiet, "Suppress per-epoch progress lines");
  train_cmd->add_flag("--batch-dead", train_batch_dead,
                      "Also write per-batch dead-neuron percentages to batch_dead.csv");
  train_cmd->callback([&] {
    Hyperparams hp = resolve_config(train_cfg);
    NetworkSpec spec = parse_network_spec(train_arch);
    auto [train_set, test_set] = load_splits(train_data_flags, spec.layer_sizes.front(), hp);
    Network net = init_network(spec, hp, std::uint64_t(hp.seed));
    fs::path dir = fs::path(train_out) / train_name;
    TrainResult result = run_one(
        net, train_set, test_set, dir,
        run_comments(hp, spec, data_description(train_data_flags), weight_fingerprint(net)),
        train_timing, train_save_opt, train_patience, train_max_seconds,
        train_quiet ? nullptr : &std::cout, train_batch_dead);
    std::cout << "best test accuracy " << format_sig9(result.best_test_accuracy)
              << " at epoch " << result.best_epoch << "\n"
              << "outputs under " << dir.string() << "\n";
    if (train_reach > 0.0) {
      int reached = 0;
      for (const EpochStats& e : result.history)
        if (e.test.accuracy * 100.0 >= train_reach) { reached = e.test.epoch; break; }
      if (reached > 0)
        std::cout << "test accuracy reached " << format_sig9(train_reach)
                  << "% at epoch " << reached << "\n";
      else
        std::cout << "test accuracy never reached " << format_sig9(train_reach) << "%\n";
    }
  });

  // eval -------------------------------------------------------------------
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a checkpoint on a test split");
  std::string eval_ckpt;
  std::vector<std::string> eval_sets;
  DataOptions eval_data_flags;
  eval_cmd->add_option("--checkpoint", eval_ckpt, "Checkpoint file")
      ->required()
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--set", eval_sets, "Override a stored config key (repeatable)");
  add_data_flags(eval_cmd, eval_data_flags);
  eval_cmd->callback([&] {
    Checkpoint ck = load_checkpoint(eval_ckpt);
    ck.net.hp = apply_overrides(ck.net.hp, eval_sets);
    Dataset eval_set;
    if (eval_data_flags.synthetic) {
      eval_set = load_splits(eval_data_flags, ck.net.spec.layer_sizes.front(),
                             ck.net.hp).second;
    } else if (!eval_data_flags.data_dir.empty()) {
      fs::path root = eval_data_flags.data_dir;
      if (fs::is_directory(root / "test") || fs::is_directory(root / "Test"))
        eval_set = load_data_dir(root.string(), ck.net.hp).second;
      else
        eval_set = load_split_dir(root.string(), ck.net.hp);
    } else {
      throw ConfigError("either --synthetic or --data-dir is required");
    }
    EvalStats stats = evaluate(ck.net, eval_set);
    std::cout << "samples " << eval_set.samples.size() << "  loss "
              << format_sig9(stats.loss) << "  accuracy "
              << format_sig9(stats.accuracy) << "\n";
    print_layer_stats(stats.activity, ck.net);
  });

  // sweep-th ---------------------------------------------------------------
  auto* sweep_cmd = app.add_subcommand(
      "sweep-th", "Grid-search the initial threshold with frozen thresholds (lr_th=0)");
  ConfigFlags sweep_cfg;
  DataOptions sweep_data_flags;
  std::string sweep_arch = "20-16-2";
  std::string sweep_out = "runs";
  std::string sweep_name = "sweep-th";
  std::string sweep_grid;
  int sweep_jobs = 1;
  bool sweep_timing = false;
  add_config_flags(sweep_cmd, sweep_cfg);
  add_data_flags(sweep_cmd, sweep_data_flags);
  sweep_cmd->add_option("--arch", sweep_arch, "Layer sizes");
  sweep_cmd->add_option("--out-dir", sweep_out, "Output root directory");
  sweep_cmd->add_option("--run-name", sweep_name, "Subdirectory for the sweep");
  sweep_cmd->add_option("--grid", sweep_grid, "Comma-separated th_init values (>= 2)")
      ->required();
  sweep_cmd->add_option("--jobs", sweep_jobs, "Grid points trained in parallel");
  sweep_cmd->add_flag("--timing", sweep_timing, "Record real wall_seconds in metrics");
  sweep_cmd->callback([&] {
    Hyperparams hp = resolve_config(sweep_cfg);
    std::vector<double> grid = parse_double_list(sweep_grid, "sweep-th --grid");
    if (grid.size() < 2) throw ConfigError("sweep-th: need >= 2 grid points");
    if (std::set<double>(grid.begin(), grid.end()).size() != grid.size())
      throw ConfigError("sweep-th: duplicate grid value");
    NetworkSpec spec = parse_network_spec(sweep_arch);
    auto [train_set, test_set] = load_splits(sweep_data_flags, spec.layer_sizes.front(), hp);
    fs::path dir = fs::path(sweep_out) / sweep_name;
    fs::create_directories(dir);

    std::vector<double> final_acc(grid.size(), 0.0);
    parallel_for_workers(grid.size(), sweep_jobs, [&](std::size_t i) {
      Hyperparams run_hp = hp;
      run_hp.th_init = grid[i];
      run_hp.lr_th = 0.0;  // frozen thresholds: measures raw th_init sensitivity
      validate(run_hp);
      Network net = init_network(spec, run_hp, std::uint64_t(run_hp.seed));
      std::ostream* log = sweep_jobs <= 1 ? &std::cout : nullptr;
      TrainResult result = run_one(
          net, train_set, test_set, dir / ("th" + format_sig9(grid[i])),
          run_comments(run_hp, spec, data_description(sweep_data_flags),
                       weight_fingerprint(net)),
          sweep_timing, false, 0, 0.0, log);
      final_acc[i] = result.history.back().test.accuracy;
    });

    const fs::path summary = dir / "sweep.csv";
    std::ofstream out(summary, std::ios::trunc);
    if (!out) throw DataError("cannot write '" + summary.string() + "'");
    out << "th_init,final_accuracy\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
      out << format_sig9(grid[i]) << "," << format_sig9(final_acc[i]) << "\n";
    out.close();
    for (std::size_t i = 0; i < grid.size(); ++i)
      std::cout << "th_init " << format_sig9(grid[i]) << "  final accuracy "
                << format_sig9(final_acc[i]) << "\n";
    std::cout << "sweep summary: " << summary.string() << "\n";
  });

  // ablate -----------------------------------------------------------------
  auto* ablate_cmd = app.add_subcommand(
      "ablate", "Train with several threshold learning rates from one shared initialization");
  ConfigFlags ablate_cfg;
  DataOptions ablate_data_flags;
  std::string ablate_arch = "20-16-2";
  std::string ablate_out = "runs";
  std::string ablate_name = "ablate";
  std::string ablate_list = "0,0.0001,0.001";
  int ablate_jobs = 1;
  bool ablate_timing = false;
  add_config_flags(ablate_cmd, ablate_cfg);
  add_data_flags(ablate_cmd, ablate_data_flags);
  ablate_cmd->add_option("--arch", ablate_arch, "Layer sizes");
  ablate_cmd->add_option("--out-dir", ablate_out, "Output root directory");
  ablate_cmd->add_option("--run-name", ablate_name, "Subdirectory for the ablation");
  ablate_cmd->add_option("--lr-th", ablate_list, "Comma-separated lr_th values");
  ablate_cmd->add_option("--jobs", ablate_jobs, "Runs trained in parallel");
  ablate_cmd->add_flag("--timing", ablate_timing, "Record real wall_seconds in metrics");
  ablate_cmd->callback([&] {
    Hyperparams hp = resolve_config(ablate_cfg);
    std::vector<double> rates = parse_double_list(ablate_list, "ablate --lr-th");
    NetworkSpec spec = parse_network_spec(ablate_arch);
    auto [train_set, test_set] = load_splits(ablate_data_flags, spec.layer_sizes.front(), hp);
    fs::path dir = fs::path(ablate_out) / ablate_name;
    fs::create_directories(dir);

    // All runs load one serialized initial network; stronger than replaying
    // the seed per run.
    Network init_net = init_network(spec, hp, std::uint64_t(hp.seed));
    const fs::path init_path = dir / "init.ckpt";
    save_checkpoint(init_net, init_path.string());
    const std::uint64_t init_hash = weight_fingerprint(init_net);

    struct RunOutcome {
      double accuracy = 0.0;
      double dead_pct = 0.0;
      double mean_th = 0.0;
      std::string metrics_path;
    };
    std::vector<RunOutcome> outcomes(rates.size());
    parallel_for_workers(rates.size(), ablate_jobs, [&](std::size_t i) {
      Checkpoint ck = load_checkpoint(init_path.string());
      Hyperparams run_hp = hp;
      run_hp.lr_th = rates[i];
      validate(run_hp);
      ck.net.hp = run_hp;
      if (weight_fingerprint(ck.net) != init_hash)
        throw DataError("ablate: reloaded initial weights do not match their fingerprint");
      std::ostream* log = ablate_jobs <= 1 ? &std::cout : nullptr;
      TrainResult result = run_one(
          ck.net, train_set, test_set, dir / ("lrth" + format_sig9(rates[i])),
          run_comments(run_hp, spec, data_description(ablate_data_flags), init_hash),
          ablate_timing, false, 0, 0.0, log);
      const RunMetrics& fin = result.history.back().test;
      outcomes[i] = {fin.accuracy, fin.dead_pct.front(), fin.mean_threshold.front(),
                     (dir / ("lrth" + format_sig9(rates[i])) / "metrics.csv").string()};
    });

    // The recorded headers are the artifact of record; verify them, not just
    // the in-memory state.
    std::optional<std::string> shared_hash;
    for (const RunOutcome& o : outcomes) {
      auto h = read_comment_value(o.metrics_path, "init_weight_hash");
      if (!h) throw DataError("ablate: missing init_weight_hash in " + o.metrics_path);
      if (!shared_hash) shared_hash = h;
      if (*h != *shared_hash)
        throw ConfigError("ablate: initial weight fingerprints differ across runs (" +
                          *shared_hash + " vs " + *h + ")");
    }
    std::cout << "init_weight_hash " << *shared_hash << " identical across "
              << outcomes.size() << " runs\n";

    const fs::path summary = dir / "ablate.csv";
    std::ofstream out(summary, std::ios::trunc);
    if (!out) throw DataError("cannot write '" + summary.string() + "'");
    out << "lr_th,final_accuracy,final_layer1_dead_pct,final_layer1_mean_threshold\n";
    for (std::size_t i = 0; i < rates.size(); ++i)
      out << format_sig9(rates[i]) << "," << format_sig9(outcomes[i].accuracy) << ","
          << format_sig9(outcomes[i].dead_pct) << ","
          << format_sig9(outcomes[i].mean_th) << "\n";
    out.close();
    for (std::size_t i = 0; i < rates.size(); ++i)
      std::cout << "lr_th " << format_sig9(rates[i]) << "  final accuracy "
                << format_sig9(outcomes[i].accuracy) << "  layer-1 dead_pct "
                << format_sig9(outcomes[i].dead_pct) << "\n";
    std::cout << "ablation summary: " << summary.string() << "\n";
  });

  // gen-synthetic ----------------------------------------------------------
  auto* gen_cmd = app.add_subcommand(
      "gen-synthetic", "Write the synthetic task to disk in the neutral event format");
  ConfigFlags gen_cfg;
  std::string gen_out;
  int gen_classes = 2, gen_neurons = 20, gen_train = 100, gen_test = 40;
  double gen_jitter = 0.1;
  add_config_flags(gen_cmd, gen_cfg);
  gen_cmd->add_option("--out", gen_out, "Output directory")->required();
  gen_cmd->add_option("--classes", gen_classes, "Number of classes");
  gen_cmd->add_option("--neurons", gen_neurons, "Input neurons");
  gen_cmd->add_option("--train-per-class", gen_train, "Training samples per class");
  gen_cmd->add_option("--test-per-class", gen_test, "Test samples per class");
  gen_cmd->add_option("--jitter", gen_jitter, "Fraction of each sample's cues dropped");
  gen_cmd->callback([&] {
    Hyperparams hp = resolve_config(gen_cfg);
    SyntheticSpec spec{gen_classes, gen_neurons, gen_train, gen_test, gen_jitter};
    auto [train_set, test_set] = make_synthetic_splits(spec, hp);
    auto write_split = [&hp, &gen_out](const Dataset& data, const char* split) {
      fs::path dir = fs::path(gen_out) / split;
      fs::create_directories(dir);
      std::vector<int> seen(std::size_t(data.num_classes), 0);
      for (const LabeledSample& sample : data.samples) {
        char name[48];
        std::snprintf(name, sizeof(name), "class%d_%04d.revt", sample.label,
                      seen[std::size_t(sample.label)]++);
        write_neutral(synthetic_sample_stream(sample, hp.bin_width_us),
                      (dir / name).string());
      }
    };
    write_split(train_set, "train");
    write_split(test_set, "test");
    std::cout << "wrote " << train_set.samples.size() << " train / "
              << test_set.samples.size() << " test samples under " << gen_out << "\n";
  });

  // convert-nmnist ---------------------------------------------------------
  auto* convert_cmd = app.add_subcommand(
      "convert-nmnist", "Convert an NMNIST directory tree to the neutral event format");
  std::string convert_in, convert_out;
  convert_cmd->add_option("--in", convert_in, "NMNIST root with Train/ and Test/")
      ->required()
      ->check(CLI::ExistingDirectory);
  convert_cmd->add_option("--out", convert_out, "Output directory")->required();
  convert_cmd->callback([&] {
    auto find_split = [&convert_in](const char* upper, const char* lower) -> fs::path {
      fs::path a = fs::path(convert_in) / upper;
      if (fs::is_directory(a)) return a;
      fs::path b = fs::path(convert_in) / lower;
      if (fs::is_directory(b)) return b;
      throw DataError("missing " + std::string(upper) + "/ under " + convert_in);
    };
    for (auto [split_in, split_out] :
         {std::pair{find_split("Train", "train"), "train"},
          std::pair{find_split("Test", "test"), "test"}}) {
      struct Job { fs::path in; fs::path out; std::uint32_t label; };
      std::vector<Job> jobs;
      std::vector<fs::path> digit_dirs;
      for (const auto& e : fs::directory_iterator(split_in))
        if (e.is_directory()) digit_dirs.push_back(e.path());
      std::sort(digit_dirs.begin(), digit_dirs.end());
      for (const fs::path& digit_dir : digit_dirs) {
        const std::string digits = digit_dir.filename().string();
        if (digits.empty() ||
            digits.find_first_not_of("0123456789") != std::string::npos)
          continue;
        fs::path out_dir = fs::path(convert_out) / split_out / digits;
        fs::create_directories(out_dir);
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(digit_dir))
          if (e.is_regular_file() && e.path().extension() == ".bin")
            files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const fs::path& f : files)
          jobs.push_back({f, out_dir / (f.stem().string() + ".revt"),
                          std::uint32_t(std::stoul(digits))});
      }
      if (jobs.empty())
        throw DataError("no .bin files under " + split_in.string());
      parallel_for(jobs.size(), [&jobs](std::size_t i) {
        write_neutral(load_nmnist_file(jobs[i].in.string(), jobs[i].label),
                      jobs[i].out.string());
      });
      std::cout << split_out << ": " << jobs.size() << " samples\n";
    }
  });

  // inspect ----------------------------------------------------------------
  auto* inspect_cmd = app.add_subcommand("inspect", "Describe an event file or checkpoint");
  std::string inspect_path;
  inspect_cmd->add_option("path", inspect_path, "File to inspect")
      ->required()
      ->check(CLI::ExistingFile);
  inspect_cmd->callback([&] {
    std::ifstream in(inspect_path, std::ios::binary);
    char magic[4] = {};
    in.read(magic, 4);
    const std::string tag(magic, magic + in.gcount());
    in.close();
    if (tag == "REVT") {
      EventStream s = read_neutral(inspect_path);
      std::cout << "neutral event file\n"
                << "geometry " << s.geometry.width << "x" << s.geometry.height
                << "x" << int(s.geometry.polarities) << " (" << s.geometry.num_neurons()
                << " neurons)\nlabel " << s.label << "\nevents " << s.events.size() << "\n";
      if (!s.events.empty())
        std::cout << "time span " << s.events.front().timestamp_us << ".."
                  << s.events.back().timestamp_us << " us\n";
    } else if (tag == "RSNN") {
      Checkpoint ck = load_checkpoint(inspect_path);
      std::cout << "checkpoint\narch " << to_string(ck.net.spec) << "\nparameters "
                << ck.net.spec.param_count() << "\nweight_hash "
                << format_hex16(weight_fingerprint(ck.net)) << "\noptimizer state "
                << (ck.has_opt_state ? "present" : "absent") << "\nconfig:\n";
      std::istringstream cfg(serialize_config(ck.net.hp));
      for (std::string line; std::getline(cfg, line);)
        std::cout << "  " << line << "\n";
    } else {
      throw DataError("unrecognized file format (expected REVT or RSNN magic)");
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
