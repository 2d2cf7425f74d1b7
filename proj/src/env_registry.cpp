#include "spn/env_registry.hpp"

#include "spn/cartpole.hpp"
#include "spn/error.hpp"
#include "spn/remote_env.hpp"

namespace spn {

EnvFactory make_env_factory(const std::string& locator) {
  if (locator == "cartpole" || locator == "CartPole-v1") {
    return [] { return std::make_unique<CartPole>(); };
  }
  if (locator.rfind("cmd:", 0) == 0) {
    std::string command = locator.substr(4);
    if (command.empty()) throw Error(ErrorCode::kConfig, "empty command in '" + locator + "'");
    return [command] {
      return std::make_unique<RemoteEnvironment>(spawn_process(command));
    };
  }
  if (locator.rfind("tcp:", 0) == 0) {
    const std::string rest = locator.substr(4);
    const auto colon = rest.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == rest.size()) {
      throw Error(ErrorCode::kConfig, "expected tcp:<host>:<port>, got '" + locator + "'");
    }
    const std::string host = rest.substr(0, colon);
    int port = 0;
    try {
      port = std::stoi(rest.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kConfig, "bad port in '" + locator + "'");
    }
    return [host, port] {
      return std::make_unique<RemoteEnvironment>(connect_tcp(host, port));
    };
  }
  throw Error(ErrorCode::kConfig, "unknown environment '" + locator + "'");
}

}  // namespace spn
