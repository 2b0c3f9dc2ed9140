// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: 2026 schemaguard contributors

#pragma once

// Run a child process with a stdin payload, capture stdout/stderr, and kill it
// on timeout. POSIX only.

#include "schemaguard/error.hpp"

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstring>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include <fcntl.h>
#include <poll.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

extern char **environ;

namespace schemaguard {

struct ProcessResult
{
    int exit_code = -1; // valid when !signaled && !timed_out
    bool signaled = false;
    bool timed_out = false;
    std::string out;
    std::string err;

    bool succeeded() const { return !signaled && !timed_out && exit_code == 0; }
};

namespace detail {

struct Fd
{
    int fd = -1;
    Fd() = default;
    explicit Fd(int f) : fd(f) {}
    Fd(const Fd &) = delete;
    Fd &operator=(const Fd &) = delete;
    ~Fd() { reset(); }
    void reset()
    {
        if (fd >= 0)
            ::close(fd);
        fd = -1;
    }
};

inline void make_pipe(Fd &r, Fd &w)
{
    int p[2];
    if (::pipe2(p, O_CLOEXEC) != 0)
        throw HarnessError(std::string("pipe failed: ") + std::strerror(errno));
    r.fd = p[0];
    w.fd = p[1];
}

} // namespace detail

/// Whitespace-separated command line to argv. No quoting rules.
inline std::vector<std::string> split_command(const std::string &cmd)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : cmd) {
        if (ch == ' ' || ch == '\t' || ch == '\n') {
            if (!cur.empty())
                out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty())
        out.push_back(std::move(cur));
    return out;
}

/// Runs argv[0] (searched on PATH when it has no slash). Throws HarnessError
/// when the program cannot be started at all.
inline ProcessResult run_process(const std::vector<std::string> &argv, const std::string &input,
                                 std::chrono::milliseconds timeout)
{
    if (argv.empty())
        throw HarnessError("empty generator command");

    // A child that exits without draining stdin must not kill us on write.
    static std::once_flag sigpipe_once;
    std::call_once(sigpipe_once, [] { std::signal(SIGPIPE, SIG_IGN); });

    detail::Fd in_r, in_w, out_r, out_w, err_r, err_w;
    detail::make_pipe(in_r, in_w);
    detail::make_pipe(out_r, out_w);
    detail::make_pipe(err_r, err_w);

    posix_spawn_file_actions_t fa;
    posix_spawn_file_actions_init(&fa);
    posix_spawn_file_actions_adddup2(&fa, in_r.fd, STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&fa, out_w.fd, STDOUT_FILENO);
    posix_spawn_file_actions_adddup2(&fa, err_w.fd, STDERR_FILENO);

    std::vector<char *> cargv;
    for (const auto &a : argv)
        cargv.push_back(const_cast<char *>(a.c_str()));
    cargv.push_back(nullptr);

    pid_t pid = 0;
    int rc = ::posix_spawnp(&pid, cargv[0], &fa, nullptr, cargv.data(), environ);
    posix_spawn_file_actions_destroy(&fa);
    if (rc != 0)
        throw HarnessError("cannot start generator '" + argv[0] + "': " + std::strerror(rc));

    in_r.reset();
    out_w.reset();
    err_w.reset();
    ::fcntl(in_w.fd, F_SETFL, O_NONBLOCK);

    ProcessResult res;
    std::size_t written = 0;
    if (input.empty())
        in_w.reset();

    const auto deadline = std::chrono::steady_clock::now() + timeout;
    char buf[65536];
    while (out_r.fd >= 0 || err_r.fd >= 0) {
        auto now = std::chrono::steady_clock::now();
        if (now >= deadline) {
            res.timed_out = true;
            break;
        }
        auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();

        pollfd fds[3];
        int nfds = 0;
        int idx_in = -1, idx_out = -1, idx_err = -1;
        if (in_w.fd >= 0) {
            idx_in = nfds;
            fds[nfds++] = {in_w.fd, POLLOUT, 0};
        }
        if (out_r.fd >= 0) {
            idx_out = nfds;
            fds[nfds++] = {out_r.fd, POLLIN, 0};
        }
        if (err_r.fd >= 0) {
            idx_err = nfds;
            fds[nfds++] = {err_r.fd, POLLIN, 0};
        }
        int pr = ::poll(fds, static_cast<nfds_t>(nfds), static_cast<int>(std::min<long long>(left, 1000)));
        if (pr < 0) {
            if (errno == EINTR)
                continue;
            break;
        }
        if (idx_in >= 0 && (fds[idx_in].revents & (POLLOUT | POLLERR | POLLHUP))) {
            ssize_t n = ::write(in_w.fd, input.data() + written, input.size() - written);
            if (n > 0)
                written += static_cast<std::size_t>(n);
            if (n < 0 && errno != EAGAIN && errno != EINTR)
                in_w.reset(); // child closed its stdin
            if (written == input.size())
                in_w.reset();
        }
        for (auto [idx, fd, sink] : {std::tuple{idx_out, &out_r, &res.out}, std::tuple{idx_err, &err_r, &res.err}}) {
            if (idx < 0 || !(fds[idx].revents & (POLLIN | POLLHUP | POLLERR)))
                continue;
            ssize_t n = ::read(fd->fd, buf, sizeof buf);
            if (n > 0)
                sink->append(buf, static_cast<std::size_t>(n));
            else if (n == 0 || (errno != EAGAIN && errno != EINTR))
                fd->reset();
        }
    }

    int status = 0;
    if (res.timed_out) {
        ::kill(pid, SIGKILL);
        ::waitpid(pid, &status, 0);
        return res;
    }
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    if (WIFSIGNALED(status)) {
        res.signaled = true;
    } else if (WIFEXITED(status)) {
        res.exit_code = WEXITSTATUS(status);
    }
    // posix_spawnp reports a failed exec as exit status 127 on some libcs
    if (res.exit_code == 127 && res.out.empty())
        throw HarnessError("cannot start generator '" + argv[0] + "'");
    return res;
}

} // namespace schemaguard
