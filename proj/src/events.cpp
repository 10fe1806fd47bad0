#include "rouser/events.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>

#include "rouser/errors.hpp"
#include "rouser/util.hpp"

namespace rouser {

namespace {

constexpr char kNeutralMagic[4] = {'R', 'E', 'V', 'T'};
constexpr std::uint16_t kNeutralVersion = 1;

template <typename T>
void put_le(std::string& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i)
    out.push_back(char((value >> (8 * i)) & 0xff));
}

template <typename T>
T get_le(const std::string& buf, std::size_t& pos) {
  if (pos + sizeof(T) > buf.size())
    throw DataError("neutral format: truncated payload");
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    value |= T(std::uint8_t(buf[pos + i])) << (8 * i);
  pos += sizeof(T);
  return value;
}

}  // namespace

std::uint64_t SpikeTensor::count() const {
  std::uint64_t n = 0;
  for (const auto v : data) n += v;
  return n;
}

EventStream parse_nmnist(const std::vector<std::uint8_t>& bytes, std::uint32_t label) {
  if (bytes.size() % 5 != 0)
    throw DataError("nmnist: length not divisible by 5");
  EventStream stream;
  stream.geometry = Geometry{34, 34, 2};
  stream.label = label;
  stream.events.reserve(bytes.size() / 5);
  for (std::size_t i = 0; i < bytes.size(); i += 5) {
    Event ev;
    ev.x = bytes[i];
    ev.y = bytes[i + 1];
    ev.polarity = (bytes[i + 2] >> 7) & 1;
    ev.timestamp_us = (std::uint32_t(bytes[i + 2] & 0x7f) << 16) |
                      (std::uint32_t(bytes[i + 3]) << 8) |
                      std::uint32_t(bytes[i + 4]);
    if (ev.x >= 34 || ev.y >= 34)
      throw DataError("nmnist: pixel coordinate out of 34x34 range");
    stream.events.push_back(ev);
  }
  std::stable_sort(stream.events.begin(), stream.events.end(),
                   [](const Event& a, const Event& b) {
                     return a.timestamp_us < b.timestamp_us;
                   });
  return stream;
}

EventStream load_nmnist_file(const std::string& path, std::uint32_t label) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("nmnist: cannot open '" + path + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return parse_nmnist(bytes, label);
}

SpikeTensor rasterize(const EventStream& stream, int steps, int bin_width_us) {
  if (steps < 1 || bin_width_us < 1)
    throw DataError("rasterize: steps and bin_width_us must be >= 1");
  const int plane = int(stream.geometry.width) * int(stream.geometry.height);
  SpikeTensor raster(stream.geometry.num_neurons(), steps);
  for (const Event& ev : stream.events) {
    const std::uint32_t bin = ev.timestamp_us / std::uint32_t(bin_width_us);
    if (bin >= std::uint32_t(steps)) continue;
    const int neuron =
        int(ev.polarity) * plane + int(ev.y) * int(stream.geometry.width) + int(ev.x);
    raster.set(neuron, int(bin));
  }
  return raster;
}

void write_neutral(const EventStream& stream, const std::string& path) {
  std::string buf;
  buf.reserve(24 + stream.events.size() * 10);
  buf.append(kNeutralMagic, 4);
  put_le<std::uint16_t>(buf, kNeutralVersion);
  put_le<std::uint16_t>(buf, stream.geometry.width);
  put_le<std::uint16_t>(buf, stream.geometry.height);
  put_le<std::uint8_t>(buf, stream.geometry.polarities);
  put_le<std::uint8_t>(buf, 0);  // reserved
  put_le<std::uint32_t>(buf, stream.label);
  put_le<std::uint64_t>(buf, stream.events.size());
  for (const Event& ev : stream.events) {
    put_le<std::uint16_t>(buf, ev.x);
    put_le<std::uint16_t>(buf, ev.y);
    put_le<std::uint8_t>(buf, ev.polarity);
    put_le<std::uint8_t>(buf, 0);  // pad
    put_le<std::uint32_t>(buf, ev.timestamp_us);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("neutral format: cannot write '" + path + "'");
  out.write(buf.data(), std::streamsize(buf.size()));
  if (!out) throw DataError("neutral format: write failed for '" + path + "'");
}

EventStream read_neutral(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("neutral format: cannot open '" + path + "'");
  std::string buf((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  if (buf.size() < 4 || std::memcmp(buf.data(), kNeutralMagic, 4) != 0)
    throw DataError("neutral format: bad magic in '" + path + "'");
  std::size_t pos = 4;
  const auto version = get_le<std::uint16_t>(buf, pos);
  if (version != kNeutralVersion)
    throw DataError("neutral format: unsupported version " + std::to_string(version));
  EventStream stream;
  stream.geometry.width = get_le<std::uint16_t>(buf, pos);
  stream.geometry.height = get_le<std::uint16_t>(buf, pos);
  stream.geometry.polarities = get_le<std::uint8_t>(buf, pos);
  get_le<std::uint8_t>(buf, pos);  // reserved
  stream.label = get_le<std::uint32_t>(buf, pos);
  const auto count = get_le<std::uint64_t>(buf, pos);
  if (count > (buf.size() - pos) / 10)
    throw DataError("neutral format: truncated payload in '" + path + "'");
  stream.events.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    Event ev;
    ev.x = get_le<std::uint16_t>(buf, pos);
    ev.y = get_le<std::uint16_t>(buf, pos);
    ev.polarity = get_le<std::uint8_t>(buf, pos);
    get_le<std::uint8_t>(buf, pos);  // pad
    ev.timestamp_us = get_le<std::uint32_t>(buf, pos);
    stream.events.push_back(ev);
  }
  return stream;
}

namespace {

// One cue: a short burst fired by one input neuron at a class-specific time.
struct TemplateCue {
  int neuron;
  std::vector<int> times;
};

// Burst shape per cue. A two-spike burst a few steps apart lands inside one
// synaptic integration window, so a single presentation drives the membrane
// hard while the neuron's overall firing rate stays sparse: with Kaiming
// weights a badly chosen threshold genuinely silences downstream neurons
// instead of being drowned out by input drive.
constexpr int kBurstSpikes = 2;
constexpr int kBurstGap = 3;

// Each class owns a disjoint subset of the input neurons and fires them at
// class-specific random times. Under jitter, whole cues drop out of a sample
// independently, so any single input appears in only a fraction of samples
// and a reliable decision rests on redundancy across the whole subset.
std::vector<std::vector<TemplateCue>> make_templates(int num_classes, int neurons,
                                                     int steps, std::uint64_t seed) {
  std::vector<std::vector<TemplateCue>> templates(num_classes);
  const int span = (kBurstSpikes - 1) * kBurstGap;
  const int hi = std::max(0, steps - 1 - span);

  std::vector<std::size_t> order(neurons);
  for (int i = 0; i < neurons; ++i) order[i] = std::size_t(i);
  std::mt19937_64 pick(mix_seed(seed, 0x7e4bull, 0));
  deterministic_shuffle(order, pick());

  for (int c = 0; c < num_classes; ++c) {
    std::mt19937_64 rng(mix_seed(seed, 0x7e4aull, std::uint64_t(c)));
    std::uniform_int_distribution<int> time_dist(0, hi);
    // Round-robin partition of the shuffled neuron order.
    for (int k = c; k < neurons; k += num_classes) {
      TemplateCue cue;
      cue.neuron = int(order[k]);
      const int base = time_dist(rng);
      for (int sp = 0; sp < kBurstSpikes; ++sp) {
        const int t = base + sp * kBurstGap;
        if (t < steps) cue.times.push_back(t);
      }
      templates[c].push_back(std::move(cue));
    }
  }
  return templates;
}

}  // namespace

std::vector<LabeledSample> gen_synthetic(int num_classes, int neurons, int steps,
                                         double jitter, std::uint64_t seed,
                                         int samples_per_class) {
  if (num_classes < 2) throw DataError("gen_synthetic: num_classes must be >= 2");
  if (neurons < num_classes)
    throw DataError("gen_synthetic: neurons must be >= num_classes");
  if (steps < 1) throw DataError("gen_synthetic: steps must be >= 1");
  const auto templates = make_templates(num_classes, neurons, steps, seed);

  std::vector<LabeledSample> out;
  out.reserve(std::size_t(num_classes) * std::size_t(samples_per_class));
  // Cue dropout dominates the difficulty: every sample expresses a fixed-size
  // random subset of its class's cues, so high jitter makes each input rare
  // across samples while every sample still carries usable evidence. Timing
  // noise stays mild so the surviving cues remain crisp.
  const double sigma = jitter;  // timing noise in steps
  for (int c = 0; c < num_classes; ++c) {
    const int num_cues = int(templates[c].size());
    const int kept = std::clamp(
        int(std::lround((1.0 - jitter) * num_cues)), 1, num_cues);
    for (int n = 0; n < samples_per_class; ++n) {
      // Per-sample stream so the dataset is independent of generation order.
      std::mt19937_64 rng(mix_seed(seed, 0x5a31ull, std::uint64_t(c), std::uint64_t(n)));
      std::normal_distribution<double> noise(0.0, 1.0);
      std::vector<std::size_t> pick(static_cast<std::size_t>(num_cues));
      for (int k = 0; k < num_cues; ++k) pick[std::size_t(k)] = std::size_t(k);
      deterministic_shuffle(pick, rng());
      LabeledSample sample;
      sample.label = c;
      sample.input = SpikeTensor(neurons, steps);
      for (int k = 0; k < kept; ++k) {
        const TemplateCue& cue = templates[c][pick[std::size_t(k)]];
        for (int base : cue.times) {
          int t = base;
          if (jitter > 0.0)
            t += int(std::lround(noise(rng) * sigma));
          if (t < 0 || t >= steps) continue;
          sample.input.set(cue.neuron, t);
        }
      }
      out.push_back(std::move(sample));
    }
  }
  return out;
}

EventStream synthetic_sample_stream(const LabeledSample& sample, int bin_width_us) {
  EventStream stream;
  stream.geometry = Geometry{std::uint16_t(sample.input.neurons), 1, 1};
  stream.label = std::uint32_t(sample.label);
  for (int t = 0; t < sample.input.steps; ++t)
    for (int i = 0; i < sample.input.neurons; ++i)
      if (sample.input.at(i, t))
        stream.events.push_back(Event{std::uint16_t(i), 0, 0,
                                      std::uint32_t(t) * std::uint32_t(bin_width_us)});
  return stream;
}

}  // namespace rouser
