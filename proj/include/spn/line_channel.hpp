#ifndef SPN_LINE_CHANNEL_HPP_
#define SPN_LINE_CHANNEL_HPP_

#include <memory>
#include <string>
#include <sys/types.h>

namespace spn {

// Bidirectional newline-framed text stream.
class LineChannel {
 public:
  virtual ~LineChannel() = default;
  // `line` must not contain '\n'; the terminator is appended.
  virtual void write_line(const std::string& line) = 0;
  // Returns the next line without its terminator. Throws Error(kProtocol) on
  // end of stream.
  virtual std::string read_line() = 0;
};

// Line framing over a pair of POSIX file descriptors (a pipe pair or one
// socket used for both directions). Owns the descriptors and, if given, a
// child process that is reaped on destruction.
class FdChannel final : public LineChannel {
 public:
  FdChannel(int read_fd, int write_fd, pid_t child = -1);
  ~FdChannel() override;

  FdChannel(const FdChannel&) = delete;
  FdChannel& operator=(const FdChannel&) = delete;

  void write_line(const std::string& line) override;
  std::string read_line() override;

 private:
  int read_fd_;
  int write_fd_;
  pid_t child_;
  std::string buffer_;
};

// Runs `command` through /bin/sh with its stdin/stdout connected to the
// returned channel. stderr is inherited.
std::unique_ptr<LineChannel> spawn_process(const std::string& command);

// Dials host:port over TCP.
std::unique_ptr<LineChannel> connect_tcp(const std::string& host, int port);

}  // namespace spn

#endif  // SPN_LINE_CHANNEL_HPP_
