#ifndef ODDPROD_TESTS_CLI_HARNESS_HPP
#define ODDPROD_TESTS_CLI_HARNESS_HPP

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "oddprod/io.hpp"

namespace oddprod::testing {

struct cli_run {
    int exit_code = -1;
    std::string out;
    std::string err;
};

/// Scratch directory removed on destruction.
class scratch_dir {
public:
    explicit scratch_dir(const std::string &tag)
        : path_(std::filesystem::temp_directory_path() / ("oddprod_" + tag + "_" + std::to_string(::getpid()))) {
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~scratch_dir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    scratch_dir(const scratch_dir &) = delete;
    scratch_dir &operator=(const scratch_dir &) = delete;

    [[nodiscard]] std::string operator/(const std::string &name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

inline cli_run run_cli(const scratch_dir &dir, const std::string &args) {
    const std::string out = dir / "stdout.txt";
    const std::string err = dir / "stderr.txt";
    const std::string cmd = std::string("\"") + ODDPROD_CLI + "\" " + args + " >\"" + out + "\" 2>\"" + err + "\"";
    const int status = std::system(cmd.c_str());
    cli_run run;
    run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    run.out = read_file(out);
    run.err = read_file(err);
    return run;
}

inline std::string fixture_path(const std::string &name) { return std::string(ODDPROD_FIXTURES) + "/" + name; }

} // namespace oddprod::testing

#endif
