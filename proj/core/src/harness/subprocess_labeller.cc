// Copyright 2026 The gazerev Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "gazerev/error.h"
#include "gazerev/harness/labeller.h"
#include "json.hpp"

namespace gazerev::harness {
namespace {

using Json = nlohmann::ordered_json;

Error TransportError(const std::string& what) {
  return Error(ErrorKind::kTransport, what);
}

}  // namespace

// One AF_UNIX stream socket serves as both stdin and stdout of the child,
// so writes after the child dies fail with EPIPE instead of SIGPIPE.
SubprocessLabeller::SubprocessLabeller(const std::string& command)
    : command_(command) {
  int fds[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, fds) != 0) {
    throw TransportError(std::string("socketpair failed: ") + std::strerror(errno));
  }
  const pid_t pid = ::fork();
  if (pid < 0) {
    ::close(fds[0]);
    ::close(fds[1]);
    throw TransportError(std::string("fork failed: ") + std::strerror(errno));
  }
  if (pid == 0) {
    ::dup2(fds[1], STDIN_FILENO);
    ::dup2(fds[1], STDOUT_FILENO);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  ::close(fds[1]);
  pid_ = pid;
  to_child_ = fds[0];
  from_child_ = fds[0];
}

SubprocessLabeller::~SubprocessLabeller() { Shutdown(); }

void SubprocessLabeller::Shutdown() {
  if (to_child_ >= 0) {
    // End-of-input asks the adapter to exit cleanly.
    ::shutdown(to_child_, SHUT_WR);
  }
  if (pid_ > 0) {
    int status = 0;
    // Give the child a moment to exit on EOF, then make sure it is gone.
    for (int i = 0; i < 50; ++i) {
      if (::waitpid(pid_, &status, WNOHANG) == pid_) {
        pid_ = -1;
        break;
      }
      ::usleep(20000);
    }
    if (pid_ > 0) {
      ::kill(pid_, SIGTERM);
      ::waitpid(pid_, &status, 0);
      pid_ = -1;
    }
  }
  if (to_child_ >= 0) ::close(to_child_);
  to_child_ = from_child_ = -1;
}

std::string SubprocessLabeller::ReadLine() {
  for (;;) {
    const std::size_t newline = buffer_.find('\n');
    if (newline != std::string::npos) {
      std::string line = buffer_.substr(0, newline);
      buffer_.erase(0, newline + 1);
      return line;
    }
    char chunk[4096];
    const ssize_t n = ::recv(from_child_, chunk, sizeof chunk, 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      throw TransportError("adapter '" + command_ +
                           "' closed its output before responding");
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

TaskLabels SubprocessLabeller::Label(std::string_view text_id,
                                     std::string_view prefix,
                                     std::span<const Task> tasks) {
  if (to_child_ < 0) throw TransportError("adapter session is closed");
  Json request;
  request["text_id"] = std::string(text_id);
  request["prefix"] = std::string(prefix);
  Json task_names = Json::array();
  for (Task task : tasks) task_names.push_back(std::string(TaskName(task)));
  request["tasks"] = std::move(task_names);
  std::string line = request.dump();
  line.push_back('\n');

  std::size_t sent = 0;
  while (sent < line.size()) {
    const ssize_t n =
        ::send(to_child_, line.data() + sent, line.size() - sent, MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      throw TransportError("cannot write to adapter '" + command_ +
                           "': " + std::strerror(errno));
    }
    sent += static_cast<std::size_t>(n);
  }

  const std::string reply = ReadLine();
  Json response;
  try {
    response = Json::parse(reply);
  } catch (const nlohmann::json::exception&) {
    throw TransportError("adapter sent a malformed response: " + reply);
  }
  if (!response.is_object()) {
    throw TransportError("adapter response is not an object: " + reply);
  }
  if (response.contains("error")) {
    throw TransportError("adapter error: " + response["error"].dump());
  }
  if (!response.contains("tasks") || !response["tasks"].is_object()) {
    throw TransportError("adapter response lacks a tasks object: " + reply);
  }
  if (response.contains("text_id") &&
      response["text_id"] != std::string(text_id)) {
    throw TransportError("adapter answered for text " +
                         response["text_id"].dump() + " instead of '" +
                         std::string(text_id) + "'");
  }
  TaskLabels out;
  for (Task task : tasks) {
    const std::string name(TaskName(task));
    if (!response["tasks"].contains(name) ||
        !response["tasks"][name].is_array()) {
      throw TransportError("adapter response lacks labels for task '" + name +
                           "'");
    }
    LabelSequence labels;
    for (const auto& label : response["tasks"][name]) {
      if (!label.is_string()) {
        throw TransportError("adapter label for task '" + name +
                             "' is not a string");
      }
      labels.push_back(label.get<std::string>());
    }
    out[task] = std::move(labels);
  }
  return out;
}

}  // namespace gazerev::harness
