#pragma once

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "c3d/image.hpp"

namespace c3d {

struct ProcessResult {
  int exit_code = -1;
  std::vector<std::uint8_t> out;
  std::string err;
};

namespace detail {

struct Fd {
  int fd = -1;
  Fd() = default;
  explicit Fd(int f) : fd(f) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  ~Fd() { reset(); }
  void reset() {
    if (fd >= 0) ::close(fd);
    fd = -1;
  }
};

inline void make_pipe(Fd& read_end, Fd& write_end) {
  int fds[2];
  if (::pipe2(fds, O_CLOEXEC) != 0) throw Error(std::string("pipe: ") + std::strerror(errno));
  read_end.fd = fds[0];
  write_end.fd = fds[1];
}

}  // namespace detail

// Runs argv[0] (PATH lookup), feeding `input` on stdin and collecting
// stdout/stderr. Throws only when the process cannot be started.
inline ProcessResult run_process(const std::vector<std::string>& argv, const std::vector<std::uint8_t>& input) {
  if (argv.empty()) throw Error("run_process: empty command");
  // A child that exits early must surface as an error, not kill us on write.
  static const bool sigpipe_ignored = (::signal(SIGPIPE, SIG_IGN), true);
  (void)sigpipe_ignored;
  detail::Fd in_r, in_w, out_r, out_w, err_r, err_w, exec_r, exec_w;
  detail::make_pipe(in_r, in_w);
  detail::make_pipe(out_r, out_w);
  detail::make_pipe(err_r, err_w);
  detail::make_pipe(exec_r, exec_w);

  std::vector<char*> args;
  for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);

  const pid_t pid = ::fork();
  if (pid < 0) throw Error(std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    ::dup2(in_r.fd, STDIN_FILENO);
    ::dup2(out_w.fd, STDOUT_FILENO);
    ::dup2(err_w.fd, STDERR_FILENO);
    ::execvp(args[0], args.data());
    const int code = errno;
    [[maybe_unused]] auto n = ::write(exec_w.fd, &code, sizeof code);
    ::_exit(127);
  }
  in_r.reset();
  out_w.reset();
  err_w.reset();
  exec_w.reset();

  int exec_errno = 0;
  if (::read(exec_r.fd, &exec_errno, sizeof exec_errno) == sizeof exec_errno) {
    ::waitpid(pid, nullptr, 0);
    throw Error("cannot execute '" + argv[0] + "': " + std::strerror(exec_errno));
  }

  ::fcntl(in_w.fd, F_SETFL, O_NONBLOCK);
  ProcessResult result;
  std::size_t written = 0;
  if (input.empty()) in_w.reset();
  std::uint8_t buf[65536];
  while (out_r.fd >= 0 || err_r.fd >= 0) {
    pollfd fds[3];
    int nfds = 0;
    auto add = [&](int fd, short events) {
      if (fd >= 0) fds[nfds++] = {fd, events, 0};
    };
    add(in_w.fd, POLLOUT);
    add(out_r.fd, POLLIN);
    add(err_r.fd, POLLIN);
    if (::poll(fds, nfds, -1) < 0) {
      if (errno == EINTR) continue;
      break;
    }
    for (int k = 0; k < nfds; ++k) {
      if (!fds[k].revents) continue;
      if (fds[k].fd == in_w.fd) {
        const ssize_t n = ::write(in_w.fd, input.data() + written, input.size() - written);
        if (n > 0) written += static_cast<std::size_t>(n);
        if (n < 0 && errno != EAGAIN) in_w.reset();  // reader went away
        else if (written == input.size()) in_w.reset();
      } else {
        const ssize_t n = ::read(fds[k].fd, buf, sizeof buf);
        if (n <= 0) {
          if (fds[k].fd == out_r.fd) out_r.reset();
          else err_r.reset();
        } else if (fds[k].fd == out_r.fd) {
          result.out.insert(result.out.end(), buf, buf + n);
        } else {
          result.err.append(reinterpret_cast<char*>(buf), static_cast<std::size_t>(n));
        }
      }
    }
  }
  in_w.reset();
  int status = 0;
  ::waitpid(pid, &status, 0);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
  return result;
}

}  // namespace c3d
