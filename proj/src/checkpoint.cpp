#include "spn/checkpoint.hpp"

#include <cmath>
#include <fstream>

#include "spn/config.hpp"
#include "spn/error.hpp"

namespace spn {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "spn-elite-checkpoint";
constexpr int kVersion = 1;

[[noreturn]] void corrupt(const std::string& what) {
  throw Error(ErrorCode::kConfig, "corrupt checkpoint: " + what);
}

Matrix matrix_from_json(const json& doc, std::size_t rows, std::size_t cols,
                        const char* name) {
  if (!doc.is_array() || doc.size() != rows * cols) {
    corrupt(std::string(name) + " must hold " + std::to_string(rows * cols) + " numbers");
  }
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!doc[i].is_number()) corrupt(std::string(name) + " holds a non-number");
    m.data[i] = doc[i].get<double>();
  }
  return m;
}

}  // namespace

json spec_to_json(const EnvSpec& spec) {
  json j{{"name", spec.name},
         {"obs_dim", spec.obs_dim},
         {"action", spec.action_kind == ActionKind::kDiscrete ? "discrete" : "continuous"},
         {"act_dim", spec.act_dim},
         {"max_steps", spec.max_steps}};
  if (spec.action_kind == ActionKind::kContinuous) {
    j["low"] = spec.low;
    j["high"] = spec.high;
  }
  return j;
}

EnvSpec spec_from_json(const json& doc) {
  EnvSpec spec;
  try {
    spec.name = doc.at("name").get<std::string>();
    spec.obs_dim = doc.at("obs_dim").get<std::size_t>();
    spec.act_dim = doc.at("act_dim").get<std::size_t>();
    spec.max_steps = doc.at("max_steps").get<std::size_t>();
    const std::string kind = doc.at("action").get<std::string>();
    if (kind == "discrete") {
      spec.action_kind = ActionKind::kDiscrete;
    } else if (kind == "continuous") {
      spec.action_kind = ActionKind::kContinuous;
      spec.low = doc.at("low").get<std::vector<double>>();
      spec.high = doc.at("high").get<std::vector<double>>();
    } else {
      corrupt("unknown action kind '" + kind + "'");
    }
  } catch (const json::exception& e) {
    corrupt(std::string("env_spec: ") + e.what());
  }
  return spec;
}

json checkpoint_to_json(const Checkpoint& c) {
  json j{{"format", kFormat},
         {"version", kVersion},
         {"env", c.env},
         {"env_spec", spec_to_json(c.env_spec)},
         {"run", c.run},
         {"generation", c.generation},
         {"genome_id", c.genome_id},
         {"elite_mean_return", c.elite_mean_return},
         {"mode", to_string(c.genome.mode)},
         {"ga", to_json(c.ga)},
         {"shape", to_json(c.model.shape)},
         {"neuron", to_json(c.model.neuron)},
         {"weight_seed", c.model.weight_seed},
         {"input_gain", c.model.input_gain},
         {"genome", c.genome.values}};
  if (c.model.shape.parameter_count() <= kInlineWeightLimit) {
    j["weights"] = {{"layer1", c.model.weights.layer1.data},
                    {"layer2", c.model.weights.layer2.data}};
  }
  return j;
}

Checkpoint checkpoint_from_json(const json& doc) {
  if (!doc.is_object() || doc.value("format", "") != kFormat) {
    corrupt("missing or wrong format tag");
  }
  if (doc.value("version", 0) != kVersion) corrupt("unsupported version");
  Checkpoint c;
  try {
    c.env = doc.at("env").get<std::string>();
    c.env_spec = spec_from_json(doc.at("env_spec"));
    c.run = doc.at("run").get<int>();
    c.generation = doc.at("generation").get<int>();
    c.genome_id = doc.at("genome_id").get<std::size_t>();
    c.elite_mean_return = doc.at("elite_mean_return").get<double>();
    c.ga = ga_from_json(doc.at("ga"));
    c.model.shape = shape_from_json(doc.at("shape"));
    c.model.neuron = neuron_from_json(doc.at("neuron"));
    c.model.weight_seed = doc.at("weight_seed").get<std::uint64_t>();
    c.model.input_gain = doc.at("input_gain").get<double>();
    c.genome.mode = genome_mode_from_string(doc.at("mode").get<std::string>());
    c.genome.values = doc.at("genome").get<std::vector<double>>();
  } catch (const json::exception& e) {
    corrupt(e.what());
  }
  const NetworkShape& s = c.model.shape;
  s.validate();
  c.model.neuron.validate();
  if (c.genome.values.size() != s.parameter_count()) {
    corrupt("genome length does not match the shape");
  }
  for (double v : c.genome.values) {
    if (!std::isfinite(v)) corrupt("genome holds non-finite values");
  }
  if (doc.contains("weights")) {
    const json& w = doc["weights"];
    if (!w.is_object() || !w.contains("layer1") || !w.contains("layer2")) {
      corrupt("weights must hold layer1 and layer2");
    }
    c.model.weights = {matrix_from_json(w["layer1"], s.inputs, s.hidden, "layer1"),
                       matrix_from_json(w["layer2"], s.hidden, s.outputs, "layer2")};
    c.model.weights.validate();
  } else {
    try {
      c.model.weights = FixedWeights::random(s, c.model.weight_seed, c.model.input_gain);
    } catch (const Error& e) {
      corrupt(e.what());
    }
  }
  return c;
}

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write checkpoint '" + path + "'");
  out << checkpoint_to_json(ckpt).dump(1) << '\n';
  if (!out) throw Error(ErrorCode::kIo, "failed writing checkpoint '" + path + "'");
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open checkpoint '" + path + "'");
  json doc = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) corrupt("'" + path + "' is not valid JSON");
  return checkpoint_from_json(doc);
}

}  // namespace spn
