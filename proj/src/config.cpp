#include "rouser/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rouser/errors.hpp"
#include "rouser/util.hpp"

namespace rouser {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE)
    throw ConfigError("config: key '" + key + "': not a number: '" + value + "'");
  return x;
}

int parse_int(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const long x = std::strtol(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE)
    throw ConfigError("config: key '" + key + "': not an integer: '" + value + "'");
  return static_cast<int>(x);
}

void apply_key(Hyperparams& hp, const std::string& key, const std::string& value) {
  if (key == "th_init") hp.th_init = parse_real(key, value);
  else if (key == "s") hp.s = parse_real(key, value);
  else if (key == "tau") hp.tau = parse_real(key, value);
  else if (key == "lr_w") hp.lr_w = parse_real(key, value);
  else if (key == "lr_th") hp.lr_th = parse_real(key, value);
  else if (key == "current_decay") hp.current_decay = parse_real(key, value);
  else if (key == "voltage_decay") hp.voltage_decay = parse_real(key, value);
  else if (key == "v_rest") hp.v_rest = parse_real(key, value);
  else if (key == "true_rate") hp.true_rate = parse_real(key, value);
  else if (key == "false_rate") hp.false_rate = parse_real(key, value);
  else if (key == "time_steps") hp.time_steps = parse_int(key, value);
  else if (key == "batch_size") hp.batch_size = parse_int(key, value);
  else if (key == "epochs") hp.epochs = parse_int(key, value);
  else if (key == "seed") hp.seed = parse_int(key, value);
  else if (key == "bin_width_us") hp.bin_width_us = parse_int(key, value);
  else if (key == "th_clamp_min") hp.th_clamp_min = parse_real(key, value);
  else throw ConfigError("config: unknown key '" + key + "'");
}

}  // namespace

void validate(const Hyperparams& hp) {
  const auto fail = [](const std::string& key, const std::string& what) {
    throw ConfigError("config: key '" + key + "' " + what);
  };
  if (!(hp.current_decay >= 0.0 && hp.current_decay < 1.0))
    fail("current_decay", "must satisfy 0 <= current_decay < 1");
  if (!(hp.voltage_decay >= 0.0 && hp.voltage_decay < 1.0))
    fail("voltage_decay", "must satisfy 0 <= voltage_decay < 1");
  if (!(hp.tau > 0.0)) fail("tau", "must be > 0");
  if (!(hp.s > 0.0)) fail("s", "must be > 0");
  if (!(hp.th_init > hp.v_rest)) fail("th_init", "must be > v_rest");
  if (!(hp.lr_w >= 0.0)) fail("lr_w", "must be >= 0");
  if (!(hp.lr_th >= 0.0)) fail("lr_th", "must be >= 0");
  if (!(hp.false_rate >= 0.0 && hp.false_rate < hp.true_rate && hp.true_rate <= 1.0))
    fail("true_rate", "must satisfy 0 <= false_rate < true_rate <= 1");
  if (hp.time_steps < 1) fail("time_steps", "must be a positive integer");
  if (hp.batch_size < 1) fail("batch_size", "must be a positive integer");
  if (hp.epochs < 1) fail("epochs", "must be a positive integer");
  if (hp.seed < 1) fail("seed", "must be a positive integer");
  if (hp.bin_width_us < 1) fail("bin_width_us", "must be a positive integer");
}

Hyperparams parse_config(const std::string& text) {
  Hyperparams hp;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) +
                        ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config: line " + std::to_string(lineno) +
                        ": expected 'key = value', got '" + line + "'");
    apply_key(hp, key, value);
  }
  validate(hp);
  return hp;
}

Hyperparams load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

Hyperparams apply_overrides(Hyperparams hp, const std::vector<std::string>& sets) {
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw ConfigError("--set: expected key=value, got '" + kv + "'");
    apply_key(hp, trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
  }
  validate(hp);
  return hp;
}

std::string serialize_config(const Hyperparams& hp) {
  std::ostringstream out;
  out << "th_init = " << format_exact(hp.th_init) << '\n'
      << "s = " << format_exact(hp.s) << '\n'
      << "tau = " << format_exact(hp.tau) << '\n'
      << "lr_w = " << format_exact(hp.lr_w) << '\n'
      << "lr_th = " << format_exact(hp.lr_th) << '\n'
      << "current_decay = " << format_exact(hp.current_decay) << '\n'
      << "voltage_decay = " << format_exact(hp.voltage_decay) << '\n'
      << "v_rest = " << format_exact(hp.v_rest) << '\n'
      << "true_rate = " << format_exact(hp.true_rate) << '\n'
      << "false_rate = " << format_exact(hp.false_rate) << '\n'
      << "time_steps = " << hp.time_steps << '\n'
      << "batch_size = " << hp.batch_size << '\n'
      << "epochs = " << hp.epochs << '\n'
      << "seed = " << hp.seed << '\n'
      << "bin_width_us = " << hp.bin_width_us << '\n';
  if (hp.th_clamp_min)
    out << "th_clamp_min = " << format_exact(*hp.th_clamp_min) << '\n';
  return out.str();
}

void save_config(const Hyperparams& hp, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("config: cannot write '" + path + "'");
  out << serialize_config(hp);
}

}  // namespace rouser
