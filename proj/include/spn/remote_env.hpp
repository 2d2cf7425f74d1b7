#ifndef SPN_REMOTE_ENV_HPP_
#define SPN_REMOTE_ENV_HPP_

#include <memory>

#include "spn/environment.hpp"
#include "spn/line_channel.hpp"

namespace spn {

// Client side of the line protocol:
//   {"cmd":"spec"}             -> {"obs_dim":N,"action":"discrete"|"continuous",
//                                  "act_dim":M,"low":[..],"high":[..],
//                                  "max_steps":T,"name":S}
//   {"cmd":"reset","seed":K}   -> {"obs":[..]}
//   {"cmd":"step","action":..} -> {"obs":[..],"reward":R,"done":B}
//   {"cmd":"close"}            -> {"ok":true}
// A reply carrying an "error" field, a malformed line, or an observation of
// the wrong length ends the session with an Error.
class RemoteEnvironment final : public Environment {
 public:
  // Performs the spec handshake immediately.
  explicit RemoteEnvironment(std::unique_ptr<LineChannel> channel);
  ~RemoteEnvironment() override;

  const EnvSpec& spec() const override { return spec_; }

  // Sends close and waits for the acknowledgement. Called by the destructor
  // (errors swallowed there) if not called explicitly.
  void close();

 protected:
  Observation do_reset(std::uint64_t seed) override;
  StepResult do_step(const Action& action) override;

 private:
  std::unique_ptr<LineChannel> channel_;
  EnvSpec spec_;
  bool closed_ = false;
  bool broken_ = false;
};

}  // namespace spn

#endif  // SPN_REMOTE_ENV_HPP_
