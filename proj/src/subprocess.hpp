// Copyright (c) tropsmt contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <string>
#include <sys/types.h>
#include <vector>

namespace tropsmt::detail {

/// Child process with piped stdin/stdout; stderr goes to /dev/null.
/// Failures throw BackendError.
class ChildProcess {
public:
    using Clock = std::chrono::steady_clock;

    explicit ChildProcess(const std::vector<std::string> &argv);
    ~ChildProcess();
    ChildProcess(const ChildProcess &) = delete;
    ChildProcess &operator=(const ChildProcess &) = delete;

    void write(const std::string &text);
    /// Next non-empty line, trimmed.
    std::string read_line(Clock::time_point deadline);
    /// Next balanced parenthesized expression (or bare token line).
    std::string read_sexpr(Clock::time_point deadline);
    bool alive() const { return pid_ > 0; }
    void kill();

private:
    /// Appends at least one byte to buffer_ or throws.
    void fill(Clock::time_point deadline);

    pid_t pid_ = -1;
    int in_fd_ = -1;
    int out_fd_ = -1;
    std::string buffer_;
    std::string program_;
};

} // namespace tropsmt::detail
