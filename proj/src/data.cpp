#include "rouser/data.hpp"

#include <algorithm>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "rouser/errors.hpp"
#include "rouser/util.hpp"

namespace fs = std::filesystem;

namespace rouser {
namespace {

bool has_extension(const fs::path& p, const char* ext) {
  std::string e = p.extension().string();
  std::transform(e.begin(), e.end(), e.begin(),
                 [](unsigned char c) { return char(std::tolower(c)); });
  return e == ext;
}

// Directory names "0".."N" carry the label for raw NMNIST files.
bool numeric_label(const std::string& name, int* label) {
  if (name.empty() || name.size() > 4) return false;
  for (char c : name)
    if (c < '0' || c > '9') return false;
  *label = std::stoi(name);
  return true;
}

struct PendingFile {
  fs::path path;
  int label = -1;  // -1: embedded in the file
};

void finish_dataset(Dataset* data) {
  int max_label = -1;
  int input_size = -1;
  for (const LabeledSample& s : data->samples) {
    max_label = std::max(max_label, s.label);
    if (input_size < 0) input_size = s.input.neurons;
    if (s.input.neurons != input_size)
      throw DataError("dataset mixes input sizes: " + std::to_string(input_size) +
                      " and " + std::to_string(s.input.neurons));
  }
  data->num_classes = max_label + 1;
}

}  // namespace

std::pair<Dataset, Dataset> make_synthetic_splits(const SyntheticSpec& spec,
                                                  const Hyperparams& hp) {
  if (spec.train_per_class < 1 || spec.test_per_class < 1)
    throw DataError("synthetic splits need at least one sample per class each");
  const int per_class = spec.train_per_class + spec.test_per_class;
  std::vector<LabeledSample> all =
      gen_synthetic(spec.classes, spec.neurons, hp.time_steps, spec.jitter,
                    hp.seed, per_class);

  Dataset train, test;
  train.num_classes = test.num_classes = spec.classes;
  for (int c = 0; c < spec.classes; ++c) {
    auto begin = all.begin() + std::ptrdiff_t(c) * per_class;
    for (int n = 0; n < per_class; ++n) {
      auto& dst = n < spec.train_per_class ? train : test;
      dst.samples.push_back(std::move(*(begin + n)));
    }
  }
  return {std::move(train), std::move(test)};
}

Dataset load_split_dir(const std::string& dir, const Hyperparams& hp) {
  if (!fs::is_directory(dir))
    throw DataError("not a directory: " + dir);

  std::vector<PendingFile> files;
  auto scan = [&files](const fs::path& where, int label) {
    std::vector<fs::path> entries;
    for (const auto& e : fs::directory_iterator(where))
      entries.push_back(e.path());
    std::sort(entries.begin(), entries.end());
    for (const fs::path& p : entries) {
      if (!fs::is_regular_file(p)) continue;
      if (has_extension(p, ".revt"))
        files.push_back({p, -1});
      else if (has_extension(p, ".bin") && label >= 0)
        files.push_back({p, label});
    }
  };

  scan(dir, -1);
  std::vector<fs::path> subdirs;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_directory()) subdirs.push_back(e.path());
  std::sort(subdirs.begin(), subdirs.end());
  for (const fs::path& sub : subdirs) {
    int label = -1;
    numeric_label(sub.filename().string(), &label);
    scan(sub, label);
  }

  if (files.empty())
    throw DataError("no .revt or labelled .bin files under " + dir);

  Dataset data;
  data.samples.resize(files.size());
  parallel_for(files.size(), [&](std::size_t i) {
    const PendingFile& f = files[i];
    EventStream stream = f.label >= 0
                             ? load_nmnist_file(f.path.string(), std::uint32_t(f.label))
                             : read_neutral(f.path.string());
    data.samples[i].label = int(stream.label);
    data.samples[i].input = rasterize(stream, hp.time_steps, hp.bin_width_us);
  });
  finish_dataset(&data);
  return data;
}

std::pair<Dataset, Dataset> load_data_dir(const std::string& root,
                                          const Hyperparams& hp) {
  auto pick = [&root](const char* lower, const char* upper) -> std::string {
    fs::path a = fs::path(root) / lower;
    if (fs::is_directory(a)) return a.string();
    fs::path b = fs::path(root) / upper;
    if (fs::is_directory(b)) return b.string();
    throw DataError("missing " + std::string(lower) + "/ under " + root);
  };
  Dataset train = load_split_dir(pick("train", "Train"), hp);
  Dataset test = load_split_dir(pick("test", "Test"), hp);
  return {std::move(train), std::move(test)};
}

}  // namespace rouser
