// Copyright 2026 The invgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "subprocess.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <sstream>

#include "invgen/error.h"

namespace invgen {
namespace {

void CloseFd(int& fd) {
  if (fd >= 0) {
    close(fd);
    fd = -1;
  }
}

}  // namespace

bool IsExecutable(const std::string& path) {
  struct stat st;
  return stat(path.c_str(), &st) == 0 && S_ISREG(st.st_mode) &&
         access(path.c_str(), X_OK) == 0;
}

std::string FindOnPath(const std::string& name) {
  if (name.find('/') != std::string::npos) {
    return IsExecutable(name) ? name : "";
  }
  const char* env = std::getenv("PATH");
  if (!env) return "";
  std::stringstream ss(env);
  std::string dir;
  while (std::getline(ss, dir, ':')) {
    if (dir.empty()) dir = ".";
    std::string cand = dir + "/" + name;
    if (IsExecutable(cand)) return cand;
  }
  return "";
}

ProcessResult RunProcess(const std::vector<std::string>& argv,
                         const std::string& input, int timeout_ms) {
  int in_pipe[2], out_pipe[2], err_pipe[2], exec_pipe[2];
  if (pipe2(in_pipe, O_CLOEXEC) || pipe2(out_pipe, O_CLOEXEC) ||
      pipe2(err_pipe, O_CLOEXEC) ||
      pipe2(exec_pipe, O_CLOEXEC)) {
    throw SolverLaunchError(std::string("pipe: ") + std::strerror(errno));
  }
  pid_t pid = fork();
  if (pid < 0) {
    throw SolverLaunchError(std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    dup2(err_pipe[1], STDERR_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    close(err_pipe[0]);
    close(err_pipe[1]);
    close(exec_pipe[0]);
    std::vector<char*> args;
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    execv(args[0], args.data());
    int code = errno;
    (void)!write(exec_pipe[1], &code, sizeof(code));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  close(err_pipe[1]);
  close(exec_pipe[1]);

  int exec_errno = 0;
  ssize_t n = read(exec_pipe[0], &exec_errno, sizeof(exec_errno));
  close(exec_pipe[0]);
  if (n == sizeof(exec_errno)) {
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(err_pipe[0]);
    waitpid(pid, nullptr, 0);
    throw SolverLaunchError("cannot execute " + argv[0] + ": " +
                            std::strerror(exec_errno));
  }

  ProcessResult result;
  int wfd = in_pipe[1];
  int rfd = out_pipe[0];
  int efd = err_pipe[0];
  fcntl(wfd, F_SETFL, O_NONBLOCK);
  signal(SIGPIPE, SIG_IGN);
  size_t written = 0;
  if (input.empty()) CloseFd(wfd);

  auto deadline =
      std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
  char buf[8192];
  while (rfd >= 0 || efd >= 0) {
    auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      result.timed_out = true;
      kill(pid, SIGKILL);
      break;
    }
    int wait_ms = static_cast<int>(
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now)
            .count());
    pollfd fds[3];
    int nfds = 0;
    int wi = -1, ri = -1, ei = -1;
    if (wfd >= 0) {
      fds[nfds] = {wfd, POLLOUT, 0};
      wi = nfds++;
    }
    if (rfd >= 0) {
      fds[nfds] = {rfd, POLLIN, 0};
      ri = nfds++;
    }
    if (efd >= 0) {
      fds[nfds] = {efd, POLLIN, 0};
      ei = nfds++;
    }
    int rc = poll(fds, static_cast<nfds_t>(nfds), wait_ms);
    if (rc < 0) {
      if (errno == EINTR) continue;
      kill(pid, SIGKILL);
      break;
    }
    if (wi >= 0 && fds[wi].revents) {
      if (fds[wi].revents & (POLLERR | POLLHUP)) {
        CloseFd(wfd);
      } else {
        ssize_t w = write(wfd, input.data() + written, input.size() - written);
        if (w > 0) written += static_cast<size_t>(w);
        if (w < 0 && errno != EAGAIN) CloseFd(wfd);
        if (written >= input.size()) CloseFd(wfd);
      }
    }
    if (ri >= 0 && fds[ri].revents) {
      ssize_t r = read(rfd, buf, sizeof(buf));
      if (r > 0) {
        result.out.append(buf, static_cast<size_t>(r));
      } else {
        CloseFd(rfd);
      }
    }
    if (ei >= 0 && fds[ei].revents) {
      ssize_t r = read(efd, buf, sizeof(buf));
      if (r > 0) {
        result.err.append(buf, static_cast<size_t>(r));
      } else {
        CloseFd(efd);
      }
    }
  }
  CloseFd(wfd);
  CloseFd(rfd);
  CloseFd(efd);
  int status = 0;
  waitpid(pid, &status, 0);
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  return result;
}

}  // namespace invgen
