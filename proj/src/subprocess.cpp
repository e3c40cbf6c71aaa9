// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#include "subprocess.hpp"

#include <cerrno>
#include <csignal>
#include <cstring>
#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <thread>
#include <unistd.h>

#include "tropsmt/smt.hpp"

namespace tropsmt::detail {

namespace {

[[noreturn]] void fail(BackendError::Kind kind, const std::string &what) { throw BackendError(kind, what); }

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

ChildProcess::ChildProcess(const std::vector<std::string> &argv) {
    if (argv.empty())
        fail(BackendError::Kind::ProcessFailure, "empty solver command");
    program_ = argv.front();
    std::signal(SIGPIPE, SIG_IGN);

    int to_child[2];
    int from_child[2];
    int exec_status[2];
    if (pipe2(to_child, O_CLOEXEC) != 0 || pipe2(from_child, O_CLOEXEC) != 0 || pipe2(exec_status, O_CLOEXEC) != 0)
        fail(BackendError::Kind::ProcessFailure, std::string("pipe: ") + std::strerror(errno));

    std::vector<char *> args;
    for (const auto &a : argv)
        args.push_back(const_cast<char *>(a.c_str()));
    args.push_back(nullptr);

    pid_ = fork();
    if (pid_ < 0)
        fail(BackendError::Kind::ProcessFailure, std::string("fork: ") + std::strerror(errno));
    if (pid_ == 0) {
        dup2(to_child[0], STDIN_FILENO);
        dup2(from_child[1], STDOUT_FILENO);
        int devnull = open("/dev/null", O_WRONLY);
        if (devnull >= 0)
            dup2(devnull, STDERR_FILENO);
        execvp(args[0], args.data());
        int err = errno;
        (void)!::write(exec_status[1], &err, sizeof err);
        _exit(127);
    }
    close(to_child[0]);
    close(from_child[1]);
    close(exec_status[1]);
    in_fd_ = to_child[1];
    out_fd_ = from_child[0];

    int err = 0;
    ssize_t n = ::read(exec_status[0], &err, sizeof err);
    close(exec_status[0]);
    if (n == static_cast<ssize_t>(sizeof err)) {
        kill();
        fail(BackendError::Kind::ProcessFailure, "cannot execute '" + program_ + "': " + std::strerror(err));
    }
}

ChildProcess::~ChildProcess() {
    if (pid_ > 0 && in_fd_ >= 0) {
        const char bye[] = "(exit)\n";
        (void)!::write(in_fd_, bye, sizeof bye - 1);
    }
    if (in_fd_ >= 0)
        close(in_fd_);
    if (pid_ > 0) {
        for (int i = 0; i < 50; ++i) {
            if (waitpid(pid_, nullptr, WNOHANG) == pid_) {
                pid_ = -1;
                break;
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(2));
        }
    }
    kill();
    if (out_fd_ >= 0)
        close(out_fd_);
}

void ChildProcess::kill() {
    if (pid_ <= 0)
        return;
    ::kill(pid_, SIGKILL);
    waitpid(pid_, nullptr, 0);
    pid_ = -1;
}

void ChildProcess::write(const std::string &text) {
    if (pid_ <= 0)
        fail(BackendError::Kind::ProcessFailure, "solver process '" + program_ + "' is not running");
    std::size_t done = 0;
    while (done < text.size()) {
        ssize_t n = ::write(in_fd_, text.data() + done, text.size() - done);
        if (n < 0) {
            if (errno == EINTR)
                continue;
            kill();
            fail(BackendError::Kind::ProcessFailure, "solver process '" + program_ + "' closed its input");
        }
        done += static_cast<std::size_t>(n);
    }
}

void ChildProcess::fill(Clock::time_point deadline) {
    if (pid_ <= 0)
        fail(BackendError::Kind::ProcessFailure, "solver process '" + program_ + "' is not running");
    for (;;) {
        auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
        if (left <= 0) {
            kill();
            fail(BackendError::Kind::Timeout, "solver '" + program_ + "' timed out");
        }
        pollfd pfd{out_fd_, POLLIN, 0};
        int r = poll(&pfd, 1, static_cast<int>(std::min<long long>(left, 1 << 30)));
        if (r < 0 && errno == EINTR)
            continue;
        if (r == 0)
            continue;
        char chunk[4096];
        ssize_t n = ::read(out_fd_, chunk, sizeof chunk);
        if (n < 0 && errno == EINTR)
            continue;
        if (n <= 0) {
            kill();
            fail(BackendError::Kind::ProcessFailure, "solver process '" + program_ + "' terminated unexpectedly");
        }
        buffer_.append(chunk, static_cast<std::size_t>(n));
        return;
    }
}

std::string ChildProcess::read_line(Clock::time_point deadline) {
    for (;;) {
        auto nl = buffer_.find('\n');
        if (nl != std::string::npos) {
            std::string line = trim(buffer_.substr(0, nl));
            buffer_.erase(0, nl + 1);
            if (!line.empty())
                return line;
            continue;
        }
        fill(deadline);
    }
}

std::string ChildProcess::read_sexpr(Clock::time_point deadline) {
    for (;;) {
        const auto start = buffer_.find_first_not_of(" \t\r\n");
        if (start != std::string::npos) {
            if (buffer_[start] != '(')
                return read_line(deadline);
            int depth = 0;
            bool quoted = false;
            bool in_string = false;
            for (std::size_t i = start; i < buffer_.size(); ++i) {
                const char c = buffer_[i];
                if (in_string) {
                    in_string = c != '"';
                    continue;
                }
                if (quoted) {
                    quoted = c != '|';
                    continue;
                }
                if (c == '"')
                    in_string = true;
                else if (c == '|')
                    quoted = true;
                else if (c == '(')
                    ++depth;
                else if (c == ')' && --depth == 0) {
                    std::string expr = buffer_.substr(start, i - start + 1);
                    buffer_.erase(0, i + 1);
                    return expr;
                }
            }
        }
        fill(deadline);
    }
}

} // namespace tropsmt::detail
