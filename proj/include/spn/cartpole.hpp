#ifndef SPN_CARTPOLE_HPP_
#define SPN_CARTPOLE_HPP_

#include <array>

#include "spn/environment.hpp"

namespace spn {

// Classic cart-pole balancing task with the usual benchmark constants:
// explicit Euler at dt = 0.02, reward 1 per step, failure when the cart leaves
// [-2.4, 2.4] or the pole tilts past 12 degrees, episodes capped at 500 steps.
// Action 0 pushes left, action 1 pushes right.
class CartPole final : public Environment {
 public:
  static constexpr double kGravity = 9.8;
  static constexpr double kCartMass = 1.0;
  static constexpr double kPoleMass = 0.1;
  static constexpr double kPoleHalfLength = 0.5;
  static constexpr double kForce = 10.0;
  static constexpr double kDt = 0.02;
  static constexpr double kXLimit = 2.4;
  static constexpr double kThetaLimit = 12.0 * 2.0 * 3.14159265358979323846 / 360.0;
  static constexpr std::size_t kMaxSteps = 500;

  using State = std::array<double, 4>;  // x, x_dot, theta, theta_dot

  CartPole();

  const EnvSpec& spec() const override { return spec_; }

  const State& state() const { return state_; }
  // Test hook: overwrite the physical state after reset().
  void set_state(const State& s) { state_ = s; }

  // One Euler step of the dynamics, no bookkeeping.
  static State integrate(const State& s, bool push_right);

 protected:
  Observation do_reset(std::uint64_t seed) override;
  StepResult do_step(const Action& action) override;

 private:
  EnvSpec spec_;
  State state_{};
  std::size_t t_ = 0;
};

}  // namespace spn

#endif  // SPN_CARTPOLE_HPP_
