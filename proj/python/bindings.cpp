#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <iostream>

#include "rouser/bptt.hpp"
#include "rouser/config.hpp"
#include "rouser/data.hpp"
#include "rouser/diagnostics.hpp"
#include "rouser/errors.hpp"
#include "rouser/events.hpp"
#include "rouser/network.hpp"
#include "rouser/optim.hpp"
#include "rouser/train.hpp"

namespace py = pybind11;
using namespace rouser;

namespace {

SpikeTensor tensor_from_numpy(
    py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast> arr) {
  if (arr.ndim() != 2)
    throw py::value_error("expected a (neurons, steps) uint8 array");
  SpikeTensor t(int(arr.shape(0)), int(arr.shape(1)));
  auto view = arr.unchecked<2>();
  for (int i = 0; i < t.neurons; ++i)
    for (int s = 0; s < t.steps; ++s)
      if (view(i, s)) t.set(i, s);
  return t;
}

py::array_t<std::uint8_t> tensor_to_numpy(const SpikeTensor& t) {
  py::array_t<std::uint8_t> out({t.neurons, t.steps});
  auto view = out.mutable_unchecked<2>();
  for (int i = 0; i < t.neurons; ++i)
    for (int s = 0; s < t.steps; ++s)
      view(i, s) = t.at(i, s);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spiking-network training engine with learnable firing thresholds";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  py::class_<Hyperparams>(m, "Hyperparams")
      .def(py::init<>())
      .def_readwrite("th_init", &Hyperparams::th_init)
      .def_readwrite("s", &Hyperparams::s)
      .def_readwrite("tau", &Hyperparams::tau)
      .def_readwrite("lr_w", &Hyperparams::lr_w)
      .def_readwrite("lr_th", &Hyperparams::lr_th)
      .def_readwrite("current_decay", &Hyperparams::current_decay)
      .def_readwrite("voltage_decay", &Hyperparams::voltage_decay)
      .def_readwrite("v_rest", &Hyperparams::v_rest)
      .def_readwrite("true_rate", &Hyperparams::true_rate)
      .def_readwrite("false_rate", &Hyperparams::false_rate)
      .def_readwrite("time_steps", &Hyperparams::time_steps)
      .def_readwrite("batch_size", &Hyperparams::batch_size)
      .def_readwrite("epochs", &Hyperparams::epochs)
      .def_readwrite("seed", &Hyperparams::seed)
      .def_readwrite("bin_width_us", &Hyperparams::bin_width_us)
      .def_readwrite("th_clamp_min", &Hyperparams::th_clamp_min)
      .def("__eq__", [](const Hyperparams& a, const Hyperparams& b) { return a == b; });

  m.def("validate", &validate);
  m.def("load_config", &load_config);
  m.def("parse_config", &parse_config);
  m.def("apply_overrides", &apply_overrides);
  m.def("serialize_config", &serialize_config);

  m.def("surrogate_ds_dv", &surrogate_ds_dv, py::arg("v"), py::arg("threshold"),
        py::arg("hp"));
  m.def("surrogate_ds_dth", &surrogate_ds_dth, py::arg("v"), py::arg("threshold"),
        py::arg("hp"));

  py::class_<Event>(m, "Event")
      .def_readonly("x", &Event::x)
      .def_readonly("y", &Event::y)
      .def_readonly("polarity", &Event::polarity)
      .def_readonly("timestamp_us", &Event::timestamp_us);

  py::class_<Geometry>(m, "Geometry")
      .def_readonly("width", &Geometry::width)
      .def_readonly("height", &Geometry::height)
      .def_readonly("polarities", &Geometry::polarities)
      .def("num_neurons", &Geometry::num_neurons);

  py::class_<EventStream>(m, "EventStream")
      .def_readonly("geometry", &EventStream::geometry)
      .def_readonly("label", &EventStream::label)
      .def_readonly("events", &EventStream::events);

  py::class_<SpikeTensor>(m, "SpikeTensor")
      .def(py::init(&tensor_from_numpy), py::arg("array"))
      .def_readonly("neurons", &SpikeTensor::neurons)
      .def_readonly("steps", &SpikeTensor::steps)
      .def("count", &SpikeTensor::count)
      .def("numpy", &tensor_to_numpy);

  m.def("parse_nmnist",
        [](py::bytes raw, std::uint32_t label) {
          const std::string buf = raw;
          return parse_nmnist(std::vector<std::uint8_t>(buf.begin(), buf.end()), label);
        },
        py::arg("raw"), py::arg("label"));
  m.def("load_nmnist_file", &load_nmnist_file);
  m.def("rasterize", &rasterize, py::arg("stream"), py::arg("steps"),
        py::arg("bin_width_us"));
  m.def("write_neutral", &write_neutral);
  m.def("read_neutral", &read_neutral);

  py::class_<LabeledSample>(m, "LabeledSample")
      .def_readonly("input", &LabeledSample::input)
      .def_readonly("label", &LabeledSample::label);

  m.def("gen_synthetic", &gen_synthetic, py::arg("num_classes"), py::arg("neurons"),
        py::arg("steps"), py::arg("jitter"), py::arg("seed"),
        py::arg("samples_per_class"));

  py::class_<Dataset>(m, "Dataset")
      .def(py::init<>())
      .def_readwrite("samples", &Dataset::samples)
      .def_readwrite("num_classes", &Dataset::num_classes)
      .def("input_size", &Dataset::input_size);

  py::class_<SyntheticSpec>(m, "SyntheticSpec")
      .def(py::init<>())
      .def_readwrite("classes", &SyntheticSpec::classes)
      .def_readwrite("neurons", &SyntheticSpec::neurons)
      .def_readwrite("train_per_class", &SyntheticSpec::train_per_class)
      .def_readwrite("test_per_class", &SyntheticSpec::test_per_class)
      .def_readwrite("jitter", &SyntheticSpec::jitter);

  m.def("make_synthetic_splits", &make_synthetic_splits);
  m.def("load_split_dir", &load_split_dir);
  m.def("load_data_dir", &load_data_dir);

  py::class_<NetworkSpec>(m, "NetworkSpec")
      .def_readonly("layer_sizes", &NetworkSpec::layer_sizes)
      .def("num_layers", &NetworkSpec::num_layers)
      .def("param_count", &NetworkSpec::param_count)
      .def("__str__", [](const NetworkSpec& s) { return to_string(s); });
  m.def("parse_network_spec", &parse_network_spec);

  py::class_<LayerTrace>(m, "LayerTrace")
      .def_property_readonly("current",
                             [](const LayerTrace& t) { return t.current; })
      .def_property_readonly("potential",
                             [](const LayerTrace& t) { return t.potential; })
      .def_readonly("spikes", &LayerTrace::spikes);

  py::class_<Network>(m, "Network")
      .def_readonly("spec", &Network::spec)
      .def_readwrite("hp", &Network::hp)
      .def("num_layers", [](const Network& n) { return n.spec.num_layers(); })
      .def("weights",
           [](const Network& n, int layer) { return n.layers.at(layer).weights; })
      .def("thresholds",
           [](const Network& n, int layer) { return n.layers.at(layer).thresholds; })
      .def("set_weights",
           [](Network& n, int layer, const Eigen::MatrixXd& w) {
             if (w.rows() != n.layers.at(layer).weights.rows() ||
                 w.cols() != n.layers.at(layer).weights.cols())
               throw py::value_error("weight shape mismatch");
             n.layers.at(layer).weights = w;
           })
      .def("set_thresholds",
           [](Network& n, int layer, const Eigen::VectorXd& th) {
             if (th.size() != n.layers.at(layer).thresholds.size())
               throw py::value_error("threshold shape mismatch");
             n.layers.at(layer).thresholds = th;
           })
      .def("fingerprint", &weight_fingerprint);

  m.def("init_network", &init_network, py::arg("spec"), py::arg("hp"), py::arg("seed"));
  m.def("forward", &forward);
  m.def("predict", &predict);
  m.def("target_rates_for_label", &target_rates_for_label);
  m.def("loss_mse_rate", &loss_mse_rate);

  py::class_<GradientSet>(m, "GradientSet")
      .def("d_weights",
           [](const GradientSet& g, int layer) { return g.layers.at(layer).d_weights; })
      .def("d_thresholds",
           [](const GradientSet& g, int layer) { return g.layers.at(layer).d_thresholds; })
      .def("all_finite", &GradientSet::all_finite);
  m.def("backward", &backward, py::arg("net"), py::arg("traces"), py::arg("input"),
        py::arg("target"));

  py::class_<AdamState>(m, "AdamState").def_readonly("step_count", &AdamState::step_count);
  m.def("init_adam_state", &init_adam_state);
  m.def("adam_step", &adam_step, py::arg("net"), py::arg("grads"), py::arg("state"),
        py::arg("hp"));

  m.def("save_checkpoint",
        [](const Network& net, const std::string& path) { save_checkpoint(net, path); });
  m.def("load_checkpoint", [](const std::string& path) {
    Checkpoint ck = load_checkpoint(path);
    return ck.net;
  });

  py::class_<EvalStats>(m, "EvalStats")
      .def_readonly("loss", &EvalStats::loss)
      .def_readonly("accuracy", &EvalStats::accuracy);
  m.def("evaluate", &evaluate);

  py::class_<RunMetrics>(m, "RunMetrics")
      .def_readonly("epoch", &RunMetrics::epoch)
      .def_readonly("split", &RunMetrics::split)
      .def_readonly("loss", &RunMetrics::loss)
      .def_readonly("accuracy", &RunMetrics::accuracy)
      .def_readonly("dead_pct", &RunMetrics::dead_pct)
      .def_readonly("mean_spike_rate", &RunMetrics::mean_spike_rate)
      .def_readonly("mean_threshold", &RunMetrics::mean_threshold)
      .def_readonly("weight_drift", &RunMetrics::weight_drift);

  py::class_<EpochStats>(m, "EpochStats")
      .def_readonly("train", &EpochStats::train)
      .def_readonly("test", &EpochStats::test);

  py::class_<TrainResult>(m, "TrainResult")
      .def_readonly("net", &TrainResult::net)
      .def_readonly("history", &TrainResult::history)
      .def_readonly("best_epoch", &TrainResult::best_epoch)
      .def_readonly("best_test_accuracy", &TrainResult::best_test_accuracy);

  m.def(
      "train",
      [](const Network& initial, const Dataset& train_data, const Dataset& test_data,
         const std::string& metrics_path, bool verbose) {
        TrainOptions opts;
        opts.metrics_path = metrics_path;
        if (verbose) opts.log = &std::cout;
        return train(initial, train_data, test_data, opts);
      },
      py::arg("initial"), py::arg("train_data"), py::arg("test_data"),
      py::arg("metrics_path") = std::string(), py::arg("verbose") = false);
}
