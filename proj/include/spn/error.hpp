#ifndef SPN_ERROR_HPP_
#define SPN_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace spn {

enum class ErrorCode {
  kInvalidArgument,
  kShapeMismatch,
  kNonFinite,
  kProtocol,
  kEnvironment,
  kIo,
  kConfig,
  kUsage,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this type. The code is stable and
// is what the CLI prints as the machine-readable error tag.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spn

#endif  // SPN_ERROR_HPP_
