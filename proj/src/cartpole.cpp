#include "spn/cartpole.hpp"

#include <cmath>
#include <random>

namespace spn {

CartPole::CartPole() {
  spec_.name = "cartpole";
  spec_.obs_dim = 4;
  spec_.action_kind = ActionKind::kDiscrete;
  spec_.act_dim = 2;
  spec_.max_steps = kMaxSteps;
}

CartPole::State CartPole::integrate(const State& s, bool push_right) {
  constexpr double total_mass = kCartMass + kPoleMass;
  constexpr double pole_mass_length = kPoleMass * kPoleHalfLength;
  const auto [x, x_dot, theta, theta_dot] = s;
  const double force = push_right ? kForce : -kForce;
  const double cos_t = std::cos(theta);
  const double sin_t = std::sin(theta);

  const double temp =
      (force + pole_mass_length * theta_dot * theta_dot * sin_t) / total_mass;
  const double theta_acc =
      (kGravity * sin_t - cos_t * temp) /
      (kPoleHalfLength * (4.0 / 3.0 - kPoleMass * cos_t * cos_t / total_mass));
  const double x_acc = temp - pole_mass_length * theta_acc * cos_t / total_mass;

  return {x + kDt * x_dot, x_dot + kDt * x_acc, theta + kDt * theta_dot,
          theta_dot + kDt * theta_acc};
}

Observation CartPole::do_reset(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  for (double& v : state_) v = u(rng);
  t_ = 0;
  return {state_.begin(), state_.end()};
}

StepResult CartPole::do_step(const Action& action) {
  state_ = integrate(state_, std::get<DiscreteAction>(action).index == 1);
  ++t_;
  const bool failed = std::abs(state_[0]) > kXLimit || std::abs(state_[2]) > kThetaLimit;
  return {{state_.begin(), state_.end()}, 1.0, failed || t_ >= kMaxSteps};
}

}  // namespace spn
