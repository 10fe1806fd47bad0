#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <vector>

#include "rouser/errors.hpp"
#include "rouser/network.hpp"
#include "rouser/neuron.hpp"
#include "rouser/optim.hpp"
#include "test_helpers.hpp"

using namespace rouser;

TEST_CASE("architecture strings parse with multiplied dimensions") {
  NetworkSpec spec = parse_network_spec("34x34x2-500-500-10");
  CHECK(spec.layer_sizes == std::vector<int>{2312, 500, 500, 10});
  CHECK(spec.num_layers() == 3);
  CHECK(spec.param_count() ==
        (500LL * 2312 + 500) + (500LL * 500 + 500) + (10LL * 500 + 10));
  CHECK(to_string(spec) == "2312-500-500-10");

  CHECK(parse_network_spec("20-16-2").layer_sizes == std::vector<int>{20, 16, 2});

  CHECK_THROWS_AS(parse_network_spec(""), ConfigError);
  CHECK_THROWS_AS(parse_network_spec("20"), ConfigError);
  CHECK_THROWS_AS(parse_network_spec("20-"), ConfigError);
  CHECK_THROWS_AS(parse_network_spec("20x-3"), ConfigError);
  CHECK_THROWS_AS(parse_network_spec("a-b"), ConfigError);
  CHECK_THROWS_AS(parse_network_spec("20-0-2"), ConfigError);
}

TEST_CASE("init_network is deterministic and sets thresholds to th_init") {
  Hyperparams hp;
  NetworkSpec spec = parse_network_spec("20-16-2");
  Network a = init_network(spec, hp, 7);
  Network b = init_network(spec, hp, 7);
  Network c = init_network(spec, hp, 8);
  REQUIRE(a.layers.size() == 2);
  CHECK(a.layers[0].weights == b.layers[0].weights);
  CHECK(a.layers[1].weights == b.layers[1].weights);
  CHECK(a.layers[0].weights != c.layers[0].weights);
  for (const LayerParams& layer : a.layers)
    for (int i = 0; i < layer.thresholds.size(); ++i)
      CHECK(layer.thresholds(i) == 1.25);
}

TEST_CASE("kaiming initialization statistics") {
  Hyperparams hp;
  NetworkSpec spec = parse_network_spec("400-256-2");
  Network net = init_network(spec, hp, 3);
  const Eigen::MatrixXd& w = net.layers[0].weights;  // fan_in 400
  const double mean = w.mean();
  const double var = (w.array() - mean).square().sum() / double(w.size() - 1);
  const double expect = std::sqrt(2.0 / 400.0);  // about 0.0707
  CHECK(std::sqrt(var) == doctest::Approx(expect).epsilon(0.10));
  CHECK(mean == doctest::Approx(0.0).epsilon(0.01));
}

TEST_CASE("forward composes layer_forward and keeps shapes") {
  Hyperparams hp;
  hp.th_init = 0.6;
  NetworkSpec spec = parse_network_spec("6-5-4-3");
  Network net = init_network(spec, hp, 11);
  SpikeTensor input = testutil::random_spikes(6, 10, 0.4, 21);

  std::vector<LayerTrace> traces = forward(net, input);
  REQUIRE(traces.size() == 3);
  CHECK(traces[2].spikes.neurons == 3);
  CHECK(traces[2].spikes.steps == 10);
  for (std::uint8_t v : traces[2].spikes.data) CHECK((v == 0 || v == 1));

  // Trace l equals layer_forward applied to trace l-1's spikes.
  LayerTrace direct0 = layer_forward(net.layers[0], input, hp);
  CHECK(direct0.spikes == traces[0].spikes);
  LayerTrace direct1 = layer_forward(net.layers[1], traces[0].spikes, hp);
  CHECK(direct1.spikes == traces[1].spikes);

  // Single-layer network: forward is exactly layer_forward.
  Network single = init_network(parse_network_spec("6-4"), hp, 13);
  std::vector<LayerTrace> one = forward(single, input);
  REQUIRE(one.size() == 1);
  CHECK(one[0].spikes == layer_forward(single.layers[0], input, hp).spikes);
}

TEST_CASE("zero input propagates to zero spikes everywhere") {
  Hyperparams hp;
  Network net = init_network(parse_network_spec("8-6-4"), hp, 5);
  SpikeTensor input(8, 12);
  for (const LayerTrace& t : forward(net, input)) CHECK(t.spikes.count() == 0);
}

TEST_CASE("argmax spike-count prediction with lowest-index ties") {
  CHECK(argmax_class({0, 5, 2}) == 1);
  CHECK(argmax_class({0, 0, 0}) == 0);
  CHECK(argmax_class({3, 3, 1}) == 0);

  // Invariant under strictly monotone transforms of the counts.
  std::mt19937_64 rng(9);
  for (int k = 0; k < 100; ++k) {
    std::vector<std::uint64_t> counts(4);
    for (auto& c : counts) c = rng() % 50;
    std::vector<std::uint64_t> scaled(4);
    for (int i = 0; i < 4; ++i) scaled[i] = counts[i] * 3 + 2;
    CHECK(argmax_class(counts) == argmax_class(scaled));
  }
}

TEST_CASE("predict counts output spikes") {
  Hyperparams hp;
  hp.th_init = 0.4;
  Network net = init_network(parse_network_spec("5-4-3"), hp, 19);
  SpikeTensor input = testutil::random_spikes(5, 20, 0.5, 4);
  std::vector<LayerTrace> traces = forward(net, input);
  std::vector<std::uint64_t> counts(3, 0);
  for (int i = 0; i < 3; ++i)
    for (int t = 0; t < 20; ++t)
      counts[std::size_t(i)] += traces.back().spikes.at(i, t);
  CHECK(predict(net, input) == argmax_class(counts));
}

TEST_CASE("forward never mutates the network") {
  Hyperparams hp;
  Network net = init_network(parse_network_spec("5-4"), hp, 2);
  Network before = net;
  SpikeTensor input = testutil::random_spikes(5, 6, 0.6, 8);
  (void)forward(net, input);
  CHECK(net.layers[0].weights == before.layers[0].weights);
  CHECK(net.layers[0].thresholds == before.layers[0].thresholds);
}

TEST_CASE("checkpoints round-trip exactly") {
  testutil::TempDir tmp("ckpt");
  Hyperparams hp;
  hp.lr_th = 0.0;
  hp.th_clamp_min = 0.125;
  hp.seed = 42;
  Network net = init_network(parse_network_spec("7-5-3"), hp, 42);
  net.layers[0].weights(0, 0) = 0.123456789012345678;

  SUBCASE("parameters and config") {
    save_checkpoint(net, tmp.file("a.ckpt"));
    Checkpoint back = load_checkpoint(tmp.file("a.ckpt"));
    CHECK(back.net.spec == net.spec);
    CHECK(back.net.hp == net.hp);
    CHECK(!back.has_opt_state);
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
      CHECK(back.net.layers[l].weights == net.layers[l].weights);
      CHECK(back.net.layers[l].thresholds == net.layers[l].thresholds);
    }
    CHECK(weight_fingerprint(back.net) == weight_fingerprint(net));
  }

  SUBCASE("optimizer state") {
    AdamState state = init_adam_state(net);
    state.step_count = 17;
    state.layers[0].m_weights(1, 2) = -0.25;
    state.layers[1].v_thresholds(0) = 0.5;
    save_checkpoint(net, tmp.file("b.ckpt"), &state);
    Checkpoint back = load_checkpoint(tmp.file("b.ckpt"));
    REQUIRE(back.has_opt_state);
    CHECK(back.opt_state.step_count == 17);
    CHECK(back.opt_state.layers[0].m_weights == state.layers[0].m_weights);
    CHECK(back.opt_state.layers[1].v_thresholds == state.layers[1].v_thresholds);
  }
}

TEST_CASE("checkpoint loader rejects damage") {
  testutil::TempDir tmp("ckpt");
  Hyperparams hp;
  Network net = init_network(parse_network_spec("4-3"), hp, 1);
  save_checkpoint(net, tmp.file("ok.ckpt"));

  std::ifstream in(tmp.file("ok.ckpt"), std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)), {});
  in.close();

  {
    std::string wrong = bytes;
    wrong[0] = 'X';
    std::ofstream out(tmp.file("magic.ckpt"), std::ios::binary);
    out.write(wrong.data(), std::streamsize(wrong.size()));
  }
  CHECK_THROWS_AS(load_checkpoint(tmp.file("magic.ckpt")), DataError);

  {
    std::string version = bytes;
    version[4] = 9;  // little-endian u16 version field
    std::ofstream out(tmp.file("version.ckpt"), std::ios::binary);
    out.write(version.data(), std::streamsize(version.size()));
  }
  CHECK_THROWS_AS(load_checkpoint(tmp.file("version.ckpt")), DataError);

  {
    std::ofstream out(tmp.file("short.ckpt"), std::ios::binary);
    out.write(bytes.data(), std::streamsize(bytes.size() / 2));
  }
  CHECK_THROWS_AS(load_checkpoint(tmp.file("short.ckpt")), DataError);
}

TEST_CASE("weight fingerprints detect any change") {
  Hyperparams hp;
  Network net = init_network(parse_network_spec("6-4-2"), hp, 10);
  const std::uint64_t base = weight_fingerprint(net);
  Network copy = net;
  CHECK(weight_fingerprint(copy) == base);
  copy.layers[1].weights(0, 0) += 1e-15;
  CHECK(weight_fingerprint(copy) != base);
}
