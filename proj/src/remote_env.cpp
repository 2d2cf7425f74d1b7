#include "spn/remote_env.hpp"

#include <cmath>

#include "json.hpp"
#include "spn/error.hpp"

namespace spn {

namespace {

using nlohmann::json;

[[noreturn]] void protocol_error(const std::string& what) {
  throw Error(ErrorCode::kProtocol, "remote environment: " + what);
}

json parse_reply(const std::string& line) {
  json reply = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (reply.is_discarded() || !reply.is_object()) {
    protocol_error("malformed reply line: " + line.substr(0, 200));
  }
  if (reply.contains("error")) {
    const json& e = reply["error"];
    throw Error(ErrorCode::kEnvironment,
                "remote environment error: " + (e.is_string() ? e.get<std::string>() : e.dump()));
  }
  return reply;
}

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) protocol_error(std::string("reply lacks field '") + key + "'");
  return *it;
}

std::size_t require_count(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    protocol_error(std::string("field '") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::vector<double> require_reals(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_array()) protocol_error(std::string("field '") + key + "' must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& x : v) {
    if (!x.is_number()) {
      protocol_error(std::string("field '") + key + "' must hold only numbers");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

EnvSpec parse_spec(const json& reply) {
  EnvSpec spec;
  spec.obs_dim = require_count(reply, "obs_dim");
  spec.act_dim = require_count(reply, "act_dim");
  spec.max_steps = require_count(reply, "max_steps");
  const json& kind = require(reply, "action");
  if (kind == "discrete") {
    spec.action_kind = ActionKind::kDiscrete;
  } else if (kind == "continuous") {
    spec.action_kind = ActionKind::kContinuous;
    spec.low = require_reals(reply, "low");
    spec.high = require_reals(reply, "high");
  } else {
    protocol_error("field 'action' must be \"discrete\" or \"continuous\"");
  }
  const json& name = require(reply, "name");
  if (!name.is_string()) protocol_error("field 'name' must be a string");
  spec.name = name.get<std::string>();
  try {
    spec.validate();
  } catch (const Error& e) {
    protocol_error(std::string("invalid spec: ") + e.what());
  }
  return spec;
}

}  // namespace

RemoteEnvironment::RemoteEnvironment(std::unique_ptr<LineChannel> channel)
    : channel_(std::move(channel)) {
  channel_->write_line(json{{"cmd", "spec"}}.dump());
  spec_ = parse_spec(parse_reply(channel_->read_line()));
}

RemoteEnvironment::~RemoteEnvironment() {
  try {
    close();
  } catch (...) {
  }
}

void RemoteEnvironment::close() {
  if (closed_) return;
  closed_ = true;
  if (broken_) return;
  channel_->write_line(json{{"cmd", "close"}}.dump());
  json reply = parse_reply(channel_->read_line());
  if (reply.value("ok", false) != true) protocol_error("close was not acknowledged");
}

Observation RemoteEnvironment::do_reset(std::uint64_t seed) {
  if (closed_) throw Error(ErrorCode::kEnvironment, "remote environment already closed");
  try {
    channel_->write_line(json{{"cmd", "reset"}, {"seed", seed}}.dump());
    return require_reals(parse_reply(channel_->read_line()), "obs");
  } catch (...) {
    broken_ = true;
    throw;
  }
}

StepResult RemoteEnvironment::do_step(const Action& action) {
  if (closed_) throw Error(ErrorCode::kEnvironment, "remote environment already closed");
  try {
    json msg{{"cmd", "step"}};
    if (const auto* d = std::get_if<DiscreteAction>(&action)) {
      msg["action"] = d->index;
    } else {
      msg["action"] = std::get<ContinuousAction>(action);
    }
    channel_->write_line(msg.dump());
    json reply = parse_reply(channel_->read_line());
    StepResult r;
    r.obs = require_reals(reply, "obs");
    const json& reward = require(reply, "reward");
    if (!reward.is_number()) protocol_error("field 'reward' must be a number");
    r.reward = reward.get<double>();
    if (!std::isfinite(r.reward)) protocol_error("reward is not finite");
    const json& done = require(reply, "done");
    if (!done.is_boolean()) protocol_error("field 'done' must be a boolean");
    r.done = done.get<bool>();
    return r;
  } catch (...) {
    broken_ = true;
    throw;
  }
}

}  // namespace spn
