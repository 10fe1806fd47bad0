#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rouser {

// One sensor event: pixel address, polarity and microsecond timestamp.
struct Event {
  std::uint16_t x = 0;
  std::uint16_t y = 0;
  std::uint8_t polarity = 0;
  std::uint32_t timestamp_us = 0;

  bool operator==(const Event&) const = default;
};

struct Geometry {
  std::uint16_t width = 0;
  std::uint16_t height = 0;
  std::uint8_t polarities = 0;

  int num_neurons() const {
    return int(width) * int(height) * int(polarities);
  }
  bool operator==(const Geometry&) const = default;
};

// A labelled recording: events sorted non-decreasing by timestamp.
struct EventStream {
  Geometry geometry;
  std::uint32_t label = 0;
  std::vector<Event> events;

  bool operator==(const EventStream&) const = default;
};

// Dense binary spike raster, shape (neurons x steps). Stored time-major so a
// single time step is contiguous: data[t * neurons + i].
struct SpikeTensor {
  int neurons = 0;
  int steps = 0;
  std::vector<std::uint8_t> data;

  SpikeTensor() = default;
  SpikeTensor(int neurons_, int steps_)
      : neurons(neurons_), steps(steps_),
        data(std::size_t(neurons_) * std::size_t(steps_), 0) {}

  std::uint8_t at(int neuron, int t) const {
    return data[std::size_t(t) * neurons + neuron];
  }
  void set(int neuron, int t, std::uint8_t v = 1) {
    data[std::size_t(t) * neurons + neuron] = v;
  }
  const std::uint8_t* step(int t) const { return data.data() + std::size_t(t) * neurons; }
  std::uint64_t count() const;  // number of set entries

  bool operator==(const SpikeTensor&) const = default;
};

// Decodes NMNIST 5-byte AER records: byte0 = x, byte1 = y, byte2 bit 7 =
// polarity, remaining 23 bits = big-endian timestamp in microseconds.
// Geometry is fixed at 34x34x2. Output is sorted by timestamp.
EventStream parse_nmnist(const std::vector<std::uint8_t>& bytes, std::uint32_t label);

EventStream load_nmnist_file(const std::string& path, std::uint32_t label);

// Bins events into a binary raster: an event at time t lands in bin
// floor(t / bin_width_us); bins >= steps are dropped; repeated events in one
// (neuron, bin) collapse to a single 1. Flattened neuron index is
// polarity * (W * H) + y * W + x.
SpikeTensor rasterize(const EventStream& stream, int steps, int bin_width_us);

// Lossless binary container for EventStream (magic "REVT", version 1).
void write_neutral(const EventStream& stream, const std::string& path);
EventStream read_neutral(const std::string& path);

struct LabeledSample {
  SpikeTensor input;
  int label = 0;
};

// Deterministic synthetic classification task. Each class owns a disjoint
// subset of the input neurons, every input firing a short burst at a
// class-specific random time (one cue per input). A sample expresses a
// random subset of its class's cues, round((1 - jitter) * num_cues) of them
// but at least one, with per-spike Gaussian timing noise (sigma = jitter
// steps). jitter = 0 reproduces the templates exactly; jitter near 1 keeps
// one cue per sample, making any single input rare across samples.
std::vector<LabeledSample> gen_synthetic(int num_classes, int neurons, int steps,
                                         double jitter, std::uint64_t seed,
                                         int samples_per_class);

// The class templates underlying gen_synthetic, as event streams with
// geometry (neurons x 1 x 1); lets synthetic data round-trip through the
// neutral format.
EventStream synthetic_sample_stream(const LabeledSample& sample, int bin_width_us);

}  // namespace rouser
