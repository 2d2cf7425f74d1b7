#ifndef SPN_ENV_REGISTRY_HPP_
#define SPN_ENV_REGISTRY_HPP_

#include <string>

#include "spn/environment.hpp"

namespace spn {

// Resolves an environment locator into a factory:
//   "cartpole" or "CartPole-v1"   built-in cart-pole
//   "cmd:<shell command>"         child process speaking the line protocol
//   "tcp:<host>:<port>"           dial a server speaking the line protocol
// Each factory call yields an independent instance (a new process or
// connection for remote environments).
EnvFactory make_env_factory(const std::string& locator);

}  // namespace spn

#endif  // SPN_ENV_REGISTRY_HPP_
