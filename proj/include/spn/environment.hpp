#ifndef SPN_ENVIRONMENT_HPP_
#define SPN_ENVIRONMENT_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spn/types.hpp"

namespace spn {

struct EnvSpec {
  std::string name;
  std::size_t obs_dim = 1;
  ActionKind action_kind = ActionKind::kDiscrete;
  std::size_t act_dim = 1;
  // Only meaningful for continuous actions; one bound per action dimension.
  std::vector<double> low;
  std::vector<double> high;
  std::size_t max_steps = 1;

  void validate() const;
  std::string describe() const;
};

struct StepResult {
  Observation obs;
  double reward = 0.0;
  bool done = false;
};

struct Transition {
  Observation obs;
  Action action;
  double reward = 0.0;
};

struct Episode {
  double total_return = 0.0;
  std::size_t length = 0;
  std::optional<std::vector<Transition>> trajectory;
};

// Clamps each component of a continuous action into [low, high]; discrete
// actions pass through.
Action clip_action(const Action& action, const EnvSpec& spec);

// Episodic environment. The public reset()/step() enforce the contract (shape
// checks, clipping, no step after done); implementations provide do_reset()
// and do_step(). One instance is single-threaded.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual const EnvSpec& spec() const = 0;

  Observation reset(std::uint64_t seed);
  StepResult step(const Action& action);

  bool done() const { return done_; }
  std::size_t steps_taken() const { return steps_; }

 protected:
  virtual Observation do_reset(std::uint64_t seed) = 0;
  virtual StepResult do_step(const Action& action) = 0;

 private:
  void check_observation(const Observation& obs) const;

  bool started_ = false;
  bool done_ = false;
  std::size_t steps_ = 0;
};

using EnvFactory = std::function<std::unique_ptr<Environment>()>;
using Policy = std::function<Action(std::span<const double>)>;

// Runs reset(seed) followed by steps until done or spec().max_steps.
// The return is the undiscounted reward sum.
Episode rollout(const Policy& policy, Environment& env, std::uint64_t seed,
                bool record_trajectory = false);

}  // namespace spn

#endif  // SPN_ENVIRONMENT_HPP_
