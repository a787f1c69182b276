#include "fragmine/git.hpp"

#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cerrno>
#include <cstring>

extern char** environ;

namespace fragmine {
namespace {

struct Pipe {
    int fd[2] = {-1, -1};
    Pipe() {
        if (::pipe(fd) != 0) throw std::runtime_error(std::string("pipe: ") + std::strerror(errno));
    }
    ~Pipe() {
        close_read();
        close_write();
    }
    void close_read() {
        if (fd[0] >= 0) ::close(fd[0]);
        fd[0] = -1;
    }
    void close_write() {
        if (fd[1] >= 0) ::close(fd[1]);
        fd[1] = -1;
    }
};

}  // namespace

ProcessResult run_process(const std::vector<std::string>& argv, std::string_view input) {
    // A child exiting before reading all of stdin must not kill us.
    static const bool sigpipe_ignored = [] {
        ::signal(SIGPIPE, SIG_IGN);
        return true;
    }();
    (void)sigpipe_ignored;

    Pipe in, out, err;
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, in.fd[0], 0);
    posix_spawn_file_actions_adddup2(&actions, out.fd[1], 1);
    posix_spawn_file_actions_adddup2(&actions, err.fd[1], 2);
    for (int fd : {in.fd[0], in.fd[1], out.fd[0], out.fd[1], err.fd[0], err.fd[1]}) {
        posix_spawn_file_actions_addclose(&actions, fd);
    }

    std::vector<char*> args;
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);

    pid_t pid = 0;
    int rc = ::posix_spawnp(&pid, args[0], &actions, nullptr, args.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    ProcessResult result;
    if (rc != 0) {
        result.err = std::string("spawn failed: ") + std::strerror(rc);
        return result;
    }
    in.close_read();
    out.close_write();
    err.close_write();
    if (input.empty()) in.close_write();

    std::size_t written = 0;
    std::array<char, 65536> buf{};
    while (out.fd[0] >= 0 || err.fd[0] >= 0) {
        std::array<pollfd, 3> fds{};
        nfds_t count = 0;
        for (int fd : {out.fd[0], err.fd[0]}) {
            if (fd >= 0) fds[count++] = {fd, POLLIN, 0};
        }
        if (in.fd[1] >= 0) fds[count++] = {in.fd[1], POLLOUT, 0};
        if (::poll(fds.data(), count, -1) < 0) {
            if (errno == EINTR) continue;
            break;
        }
        for (nfds_t k = 0; k < count; ++k) {
            if (!fds[k].revents) continue;
            int fd = fds[k].fd;
            if (fd == in.fd[1]) {
                ssize_t n = ::write(fd, input.data() + written, input.size() - written);
                if (n > 0) written += static_cast<std::size_t>(n);
                if (n < 0 || written == input.size()) in.close_write();
                continue;
            }
            ssize_t n = ::read(fd, buf.data(), buf.size());
            if (n <= 0) {
                (fd == out.fd[0] ? out : err).close_read();
            } else {
                (fd == out.fd[0] ? result.out : result.err).append(buf.data(), static_cast<std::size_t>(n));
            }
        }
    }
    in.close_write();

    int status = 0;
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
    return result;
}

ProcessResult GitRepository::run(const std::vector<std::string>& args, std::string_view input) const {
    std::vector<std::string> argv = {"git", "-C", dir_.string(), "-c", "core.quotePath=false"};
    argv.insert(argv.end(), args.begin(), args.end());
    return run_process(argv, input);
}

std::string GitRepository::output(const std::vector<std::string>& args, Errc failure, std::string_view input) const {
    ProcessResult r = run(args, input);
    if (r.exit_code != 0) {
        std::string cmd = "git";
        for (const auto& a : args) cmd += " " + a;
        throw Error(failure, cmd + " in " + dir_.string() + ": " + r.err);
    }
    return std::move(r.out);
}

bool GitRepository::is_valid() const {
    if (!std::filesystem::is_directory(dir_)) return false;
    ProcessResult r = run({"rev-parse", "--absolute-git-dir"});
    if (r.exit_code != 0) return false;
    while (!r.out.empty() && (r.out.back() == '\n' || r.out.back() == '\r')) r.out.pop_back();
    // Reject a directory that merely sits inside some enclosing repository.
    auto git_dir = std::filesystem::weakly_canonical(r.out);
    auto here = std::filesystem::weakly_canonical(dir_);
    return git_dir == here || git_dir == here / ".git";
}

}  // namespace fragmine
