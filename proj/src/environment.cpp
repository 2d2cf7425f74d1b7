#include "spn/environment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spn/error.hpp"

namespace spn {

void EnvSpec::validate() const {
  if (obs_dim < 1 || act_dim < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "environment '" + name + "' has an empty observation or action");
  }
  if (max_steps < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "environment '" + name + "' has max_steps < 1");
  }
  if (action_kind == ActionKind::kContinuous) {
    if (low.size() != act_dim || high.size() != act_dim) {
      throw Error(ErrorCode::kInvalidArgument,
                  "environment '" + name + "' action bounds do not match act_dim");
    }
    for (std::size_t k = 0; k < act_dim; ++k) {
      if (!(low[k] < high[k])) {
        throw Error(ErrorCode::kInvalidArgument,
                    "environment '" + name + "' has low >= high in its action bounds");
      }
    }
  }
}

std::string EnvSpec::describe() const {
  std::ostringstream os;
  os << name << "(obs_dim=" << obs_dim << ", "
     << (action_kind == ActionKind::kDiscrete ? "discrete" : "continuous")
     << " act_dim=" << act_dim << ", max_steps=" << max_steps << ")";
  return os.str();
}

Action clip_action(const Action& action, const EnvSpec& spec) {
  const auto* cont = std::get_if<ContinuousAction>(&action);
  if (!cont) return action;
  ContinuousAction out(*cont);
  for (std::size_t k = 0; k < out.size() && k < spec.low.size(); ++k) {
    out[k] = std::min(spec.high[k], std::max(spec.low[k], out[k]));
  }
  return out;
}

void Environment::check_observation(const Observation& obs) const {
  if (obs.size() != spec().obs_dim) {
    throw Error(ErrorCode::kProtocol,
                "environment '" + spec().name + "' produced " +
                    std::to_string(obs.size()) + " observation entries, spec says " +
                    std::to_string(spec().obs_dim));
  }
  for (double o : obs) {
    if (!std::isfinite(o)) {
      throw Error(ErrorCode::kEnvironment,
                  "environment '" + spec().name + "' produced a non-finite observation");
    }
  }
}

Observation Environment::reset(std::uint64_t seed) {
  Observation obs = do_reset(seed);
  check_observation(obs);
  started_ = true;
  done_ = false;
  steps_ = 0;
  return obs;
}

StepResult Environment::step(const Action& action) {
  if (!started_) {
    throw Error(ErrorCode::kEnvironment, "step() called before reset()");
  }
  if (done_) {
    throw Error(ErrorCode::kEnvironment,
                "step() called after the episode finished; reset() first");
  }
  const EnvSpec& s = spec();
  if (const auto* d = std::get_if<DiscreteAction>(&action)) {
    if (s.action_kind != ActionKind::kDiscrete || d->index >= s.act_dim) {
      throw Error(ErrorCode::kInvalidArgument,
                  "discrete action " + std::to_string(d->index) +
                      " is invalid for " + s.describe());
    }
  } else {
    const auto& c = std::get<ContinuousAction>(action);
    if (s.action_kind != ActionKind::kContinuous || c.size() != s.act_dim) {
      throw Error(ErrorCode::kInvalidArgument,
                  "continuous action of size " + std::to_string(c.size()) +
                      " is invalid for " + s.describe());
    }
    for (double a : c) {
      if (!std::isfinite(a)) {
        throw Error(ErrorCode::kNonFinite, "action contains non-finite values");
      }
    }
  }
  StepResult r = do_step(clip_action(action, s));
  check_observation(r.obs);
  ++steps_;
  done_ = r.done;
  return r;
}

Episode rollout(const Policy& policy, Environment& env, std::uint64_t seed,
                bool record_trajectory) {
  Episode ep;
  if (record_trajectory) ep.trajectory.emplace();
  Observation obs = env.reset(seed);
  const std::size_t limit = env.spec().max_steps;
  while (ep.length < limit) {
    Action a = policy(obs);
    StepResult r = env.step(a);
    ep.total_return += r.reward;
    ++ep.length;
    if (ep.trajectory) {
      ep.trajectory->push_back({std::move(obs), std::move(a), r.reward});
    }
    obs = std::move(r.obs);
    if (r.done) break;
  }
  return ep;
}

}  // namespace spn
