#include "rouser/network.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "rouser/errors.hpp"
#include "rouser/util.hpp"

namespace rouser {

std::int64_t NetworkSpec::param_count() const {
  std::int64_t n = 0;
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l)
    n += std::int64_t(layer_sizes[l + 1]) * layer_sizes[l] + layer_sizes[l + 1];
  return n;
}

NetworkSpec parse_network_spec(const std::string& text) {
  NetworkSpec spec;
  // getline drops a trailing empty field, so catch dangling delimiters here.
  if (text.empty() || text.back() == '-' || text.back() == 'x')
    throw ConfigError("arch: empty segment in '" + text + "'");
  std::istringstream in(text);
  std::string segment;
  while (std::getline(in, segment, '-')) {
    if (segment.empty() || segment.back() == 'x')
      throw ConfigError("arch: empty segment in '" + text + "'");
    std::int64_t size = 1;
    std::istringstream dims(segment);
    std::string dim;
    while (std::getline(dims, dim, 'x')) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(dim, &used);
      } catch (const std::exception&) {
        throw ConfigError("arch: bad dimension '" + dim + "' in '" + text + "'");
      }
      if (used != dim.size() || v < 1)
        throw ConfigError("arch: bad dimension '" + dim + "' in '" + text + "'");
      size *= v;
    }
    if (size > INT32_MAX) throw ConfigError("arch: layer size overflow in '" + text + "'");
    spec.layer_sizes.push_back(int(size));
  }
  if (spec.layer_sizes.size() < 2)
    throw ConfigError("arch: need at least input and output sizes in '" + text + "'");
  return spec;
}

std::string to_string(const NetworkSpec& spec) {
  std::string out;
  for (std::size_t i = 0; i < spec.layer_sizes.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(spec.layer_sizes[i]);
  }
  return out;
}

Network init_network(const NetworkSpec& spec, const Hyperparams& hp,
                     std::uint64_t seed) {
  if (spec.layer_sizes.size() < 2)
    throw ConfigError("init_network: spec needs at least two layer sizes");
  Network net;
  net.spec = spec;
  net.hp = hp;
  net.layers.reserve(spec.layer_sizes.size() - 1);
  for (std::size_t l = 0; l + 1 < spec.layer_sizes.size(); ++l) {
    const int fan_in = spec.layer_sizes[l];
    const int fan_out = spec.layer_sizes[l + 1];
    std::mt19937_64 rng(mix_seed(seed, 0x9a17ull, l));
    std::normal_distribution<double> normal(0.0, std::sqrt(2.0 / fan_in));
    LayerParams params;
    params.weights.resize(fan_out, fan_in);
    for (int i = 0; i < fan_out; ++i)
      for (int j = 0; j < fan_in; ++j) params.weights(i, j) = normal(rng);
    params.thresholds = Eigen::VectorXd::Constant(fan_out, hp.th_init);
    net.layers.push_back(std::move(params));
  }
  return net;
}

std::vector<LayerTrace> forward(const Network& net, const SpikeTensor& input) {
  if (input.neurons != net.spec.layer_sizes.front())
    throw std::invalid_argument("forward: input size does not match network spec");
  std::vector<LayerTrace> traces;
  traces.reserve(net.layers.size());
  const SpikeTensor* feed = &input;
  for (const LayerParams& layer : net.layers) {
    traces.push_back(layer_forward(layer, *feed, net.hp));
    feed = &traces.back().spikes;
  }
  return traces;
}

int argmax_class(const std::vector<std::uint64_t>& counts) {
  int best = 0;
  for (int i = 1; i < int(counts.size()); ++i)
    if (counts[i] > counts[best]) best = i;
  return best;
}

int predict(const Network& net, const SpikeTensor& input) {
  const auto traces = forward(net, input);
  const SpikeTensor& out = traces.back().spikes;
  std::vector<std::uint64_t> counts(out.neurons, 0);
  for (int t = 0; t < out.steps; ++t)
    for (int i = 0; i < out.neurons; ++i) counts[i] += out.at(i, t);
  return argmax_class(counts);
}

std::uint64_t weight_fingerprint(const Network& net) {
  std::uint64_t h = fnv1a_init();
  for (const LayerParams& layer : net.layers)
    h = fnv1a_update(h, layer.weights.data(),
                     sizeof(double) * std::size_t(layer.weights.size()));
  return h;
}

namespace {

constexpr char kCheckpointMagic[4] = {'R', 'S', 'N', 'N'};
constexpr std::uint16_t kCheckpointVersion = 1;

template <typename T>
void write_le(std::ostream& out, T value) {
  char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i)
    buf[i] = char((value >> (8 * i)) & 0xff);
  out.write(buf, sizeof(T));
}

template <typename T>
T read_le(std::istream& in) {
  char buf[sizeof(T)];
  in.read(buf, sizeof(T));
  if (!in) throw DataError("checkpoint: truncated file");
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    value |= T(std::uint8_t(buf[i])) << (8 * i);
  return value;
}

void write_doubles(std::ostream& out, const double* data, std::size_t n) {
  out.write(reinterpret_cast<const char*>(data), std::streamsize(n * sizeof(double)));
}

void read_doubles(std::istream& in, double* data, std::size_t n) {
  in.read(reinterpret_cast<char*>(data), std::streamsize(n * sizeof(double)));
  if (!in) throw DataError("checkpoint: truncated file");
}

// Weights are stored row-major; Eigen matrices are column-major.
void write_matrix_row_major(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      write_doubles(out, &v, 1);
    }
}

void read_matrix_row_major(std::istream& in, Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      double v;
      read_doubles(in, &v, 1);
      m(i, j) = v;
    }
}

}  // namespace

void save_checkpoint(const Network& net, const std::string& path,
                     const AdamState* opt_state) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("checkpoint: cannot write '" + path + "'");
  out.write(kCheckpointMagic, 4);
  write_le<std::uint16_t>(out, kCheckpointVersion);
  write_le<std::uint32_t>(out, std::uint32_t(net.layers.size()));
  for (const LayerParams& layer : net.layers) {
    write_le<std::uint32_t>(out, std::uint32_t(layer.fan_in()));
    write_le<std::uint32_t>(out, std::uint32_t(layer.fan_out()));
    write_matrix_row_major(out, layer.weights);
    write_doubles(out, layer.thresholds.data(), std::size_t(layer.thresholds.size()));
  }
  const std::string config_text = serialize_config(net.hp);
  write_le<std::uint32_t>(out, std::uint32_t(config_text.size()));
  out.write(config_text.data(), std::streamsize(config_text.size()));
  write_le<std::uint8_t>(out, opt_state ? 1 : 0);
  if (opt_state) {
    write_le<std::uint64_t>(out, opt_state->step_count);
    for (const auto& group : opt_state->layers) {
      write_matrix_row_major(out, group.m_weights);
      write_matrix_row_major(out, group.v_weights);
      write_doubles(out, group.m_thresholds.data(),
                    std::size_t(group.m_thresholds.size()));
      write_doubles(out, group.v_thresholds.data(),
                    std::size_t(group.v_thresholds.size()));
    }
  }
  if (!out) throw DataError("checkpoint: write failed for '" + path + "'");
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("checkpoint: cannot open '" + path + "'");
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kCheckpointMagic, 4) != 0)
    throw DataError("checkpoint: bad magic in '" + path + "'");
  const auto version = read_le<std::uint16_t>(in);
  if (version != kCheckpointVersion)
    throw DataError("checkpoint: unsupported version " + std::to_string(version));

  Checkpoint ckpt;
  const auto layer_count = read_le<std::uint32_t>(in);
  ckpt.net.layers.reserve(layer_count);
  for (std::uint32_t l = 0; l < layer_count; ++l) {
    const auto fan_in = read_le<std::uint32_t>(in);
    const auto fan_out = read_le<std::uint32_t>(in);
    if (fan_in == 0 || fan_out == 0 || fan_in > (1u << 24) || fan_out > (1u << 24))
      throw DataError("checkpoint: implausible layer shape");
    LayerParams layer;
    layer.weights.resize(fan_out, fan_in);
    read_matrix_row_major(in, layer.weights);
    layer.thresholds.resize(fan_out);
    read_doubles(in, layer.thresholds.data(), fan_out);
    if (l == 0) ckpt.net.spec.layer_sizes.push_back(int(fan_in));
    ckpt.net.spec.layer_sizes.push_back(int(fan_out));
    ckpt.net.layers.push_back(std::move(layer));
  }
  const auto config_len = read_le<std::uint32_t>(in);
  std::string config_text(config_len, '\0');
  in.read(config_text.data(), config_len);
  if (!in) throw DataError("checkpoint: truncated file");
  ckpt.net.hp = parse_config(config_text);

  const auto has_opt = read_le<std::uint8_t>(in);
  if (has_opt) {
    ckpt.has_opt_state = true;
    ckpt.opt_state.step_count = read_le<std::uint64_t>(in);
    ckpt.opt_state.layers.resize(layer_count);
    for (std::uint32_t l = 0; l < layer_count; ++l) {
      auto& group = ckpt.opt_state.layers[l];
      const auto& layer = ckpt.net.layers[l];
      group.m_weights.resize(layer.weights.rows(), layer.weights.cols());
      group.v_weights.resize(layer.weights.rows(), layer.weights.cols());
      read_matrix_row_major(in, group.m_weights);
      read_matrix_row_major(in, group.v_weights);
      group.m_thresholds.resize(layer.thresholds.size());
      group.v_thresholds.resize(layer.thresholds.size());
      read_doubles(in, group.m_thresholds.data(),
                   std::size_t(group.m_thresholds.size()));
      read_doubles(in, group.v_thresholds.data(),
                   std::size_t(group.v_thresholds.size()));
    }
  }

  // Consecutive layer shapes must chain.
  for (std::size_t l = 0; l + 1 < ckpt.net.layers.size(); ++l)
    if (ckpt.net.layers[l].fan_out() != ckpt.net.layers[l + 1].fan_in())
      throw DataError("checkpoint: layer shapes do not chain");
  return ckpt;
}

}  // namespace rouser
