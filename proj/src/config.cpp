#include "spn/config.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <set>

#include "spn/error.hpp"

namespace spn {

using nlohmann::json;

namespace {

void reject_unknown(const json& doc, const std::set<std::string>& known,
                    const std::string& where) {
  if (!doc.is_object()) throw Error(ErrorCode::kConfig, where + " must be an object");
  for (const auto& item : doc.items()) {
    if (!known.count(item.key())) {
      throw Error(ErrorCode::kConfig, "unknown key '" + item.key() + "' in " + where);
    }
  }
}

template <typename T>
void read(const json& doc, const char* key, T& out, const std::string& where) {
  auto it = doc.find(key);
  if (it == doc.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::kConfig, std::string("bad value for '") + key + "' in " + where);
  }
}

std::string env_from_json(const json& e) {
  if (e.is_string()) return e.get<std::string>();
  reject_unknown(e, {"builtin", "command", "address"}, "env");
  if (e.size() != 1) {
    throw Error(ErrorCode::kConfig, "env needs exactly one of builtin/command/address");
  }
  std::string value;
  if (e.contains("builtin")) {
    read(e, "builtin", value, "env");
    return value;
  }
  if (e.contains("command")) {
    read(e, "command", value, "env");
    return "cmd:" + value;
  }
  read(e, "address", value, "env");
  return "tcp:" + value;
}

}  // namespace

json to_json(const GaConfig& ga) {
  return {{"generations", ga.generations},
          {"population", ga.population},
          {"sigma", ga.sigma},
          {"truncation", ga.truncation},
          {"score_threshold", ga.score_threshold},
          {"elite_candidates", ga.elite_candidates},
          {"elite_episodes", ga.elite_episodes},
          {"fitness_episodes", ga.fitness_episodes}};
}

json to_json(const NeuronConfig& n) {
  return {{"time_window", n.time_window}, {"decay", n.decay}, {"v_th", n.v_th},
          {"v_rest", n.v_rest},           {"v_reset", n.v_reset}};
}

json to_json(const NetworkShape& s) {
  return {{"inputs", s.inputs}, {"hidden", s.hidden}, {"outputs", s.outputs}};
}

GaConfig ga_from_json(const json& doc) {
  reject_unknown(doc,
                 {"generations", "population", "sigma", "truncation", "score_threshold",
                  "elite_candidates", "elite_episodes", "fitness_episodes"},
                 "ga");
  GaConfig ga;
  read(doc, "generations", ga.generations, "ga");
  read(doc, "population", ga.population, "ga");
  read(doc, "sigma", ga.sigma, "ga");
  read(doc, "truncation", ga.truncation, "ga");
  read(doc, "score_threshold", ga.score_threshold, "ga");
  read(doc, "elite_candidates", ga.elite_candidates, "ga");
  read(doc, "elite_episodes", ga.elite_episodes, "ga");
  read(doc, "fitness_episodes", ga.fitness_episodes, "ga");
  return ga;
}

NeuronConfig neuron_from_json(const json& doc) {
  reject_unknown(doc, {"time_window", "decay", "v_th", "v_rest", "v_reset"}, "neuron");
  NeuronConfig n;
  read(doc, "time_window", n.time_window, "neuron");
  read(doc, "decay", n.decay, "neuron");
  read(doc, "v_th", n.v_th, "neuron");
  read(doc, "v_rest", n.v_rest, "neuron");
  read(doc, "v_reset", n.v_reset, "neuron");
  return n;
}

NetworkShape shape_from_json(const json& doc) {
  reject_unknown(doc, {"inputs", "hidden", "outputs"}, "shape");
  NetworkShape s;
  read(doc, "inputs", s.inputs, "shape");
  read(doc, "hidden", s.hidden, "shape");
  read(doc, "outputs", s.outputs, "shape");
  return s;
}

void ExperimentConfig::validate() const {
  if (runs < 1) throw Error(ErrorCode::kConfig, "runs must be >= 1");
  if (hidden < 1) throw Error(ErrorCode::kConfig, "hidden must be >= 1");
  if (!(input_gain > 0.0) || !std::isfinite(input_gain)) {
    throw Error(ErrorCode::kConfig, "input_gain must be positive and finite");
  }
  if (env.empty()) throw Error(ErrorCode::kConfig, "env must be set");
  ga.validate();
  try {
    neuron.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfig, e.what());
  }
}

ExperimentConfig config_from_json(const json& doc) {
  reject_unknown(doc,
                 {"env", "mode", "ga", "neuron", "hidden", "input_gain", "runs", "seed", "output_dir",
                  "workers"},
                 "config");
  ExperimentConfig cfg;
  if (doc.contains("env")) cfg.env = env_from_json(doc["env"]);
  if (doc.contains("mode")) {
    std::string mode;
    read(doc, "mode", mode, "config");
    cfg.mode = genome_mode_from_string(mode);
  }
  if (doc.contains("ga")) cfg.ga = ga_from_json(doc["ga"]);
  if (doc.contains("neuron")) cfg.neuron = neuron_from_json(doc["neuron"]);
  read(doc, "hidden", cfg.hidden, "config");
  read(doc, "input_gain", cfg.input_gain, "config");
  read(doc, "runs", cfg.runs, "config");
  read(doc, "seed", cfg.seed, "config");
  read(doc, "output_dir", cfg.output_dir, "config");
  read(doc, "workers", cfg.workers, "config");
  cfg.validate();
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  return {{"env", cfg.env},          {"mode", to_string(cfg.mode)},
          {"ga", to_json(cfg.ga)},   {"neuron", to_json(cfg.neuron)},
          {"hidden", cfg.hidden},    {"input_gain", cfg.input_gain},
          {"runs", cfg.runs},
          {"seed", cfg.seed},        {"output_dir", cfg.output_dir},
          {"workers", cfg.workers}};
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config '" + path + "'");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return ExperimentConfig{};
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw Error(ErrorCode::kConfig, "config '" + path + "' is not valid JSON");
  return config_from_json(doc);
}

}  // namespace spn
